#include "grate/tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace grate {

void SparseInteractionTensor::check_range(int student, int attempt, int problem) const {
    if (student < 0 || student >= dims_.students || attempt < 0 || attempt >= dims_.attempts ||
        problem < 0 || problem >= dims_.problems) {
        throw std::out_of_range("tensor index (" + std::to_string(student) + "," +
                                std::to_string(attempt) + "," + std::to_string(problem) +
                                ") outside dims (" + std::to_string(dims_.students) + "," +
                                std::to_string(dims_.attempts) + "," +
                                std::to_string(dims_.problems) + ")");
    }
}

void SparseInteractionTensor::add(int student, int attempt, int problem, double score) {
    check_range(student, attempt, problem);
    auto [it, inserted] = entries_.emplace(EntryKey{student, attempt, problem}, score);
    (void)it;
    if (!inserted) {
        throw std::invalid_argument("duplicate observation (" + std::to_string(student) + "," +
                                    std::to_string(attempt) + "," + std::to_string(problem) + ")");
    }
}

void SparseInteractionTensor::set(int student, int attempt, int problem, double score) {
    check_range(student, attempt, problem);
    entries_[EntryKey{student, attempt, problem}] = score;
}

double SparseInteractionTensor::at(int student, int attempt, int problem) const {
    auto it = entries_.find(EntryKey{student, attempt, problem});
    if (it == entries_.end()) {
        throw std::out_of_range("unobserved tensor entry");
    }
    return it->second;
}

SliceView SparseInteractionTensor::slice(int attempt) const {
    SliceView out;
    for (const auto& [key, value] : entries_) {
        if (key.attempt == attempt) {
            out.emplace(std::make_pair(key.student, key.problem), value);
        }
    }
    return out;
}

SparseInteractionTensor SparseInteractionTensor::restrict_attempts(int attempt_limit) const {
    SparseInteractionTensor out(dims_.students, std::min(attempt_limit, dims_.attempts),
                                dims_.problems);
    for (const auto& [key, value] : entries_) {
        if (key.attempt < attempt_limit) {
            out.entries_.emplace(key, value);
        }
    }
    return out;
}

std::vector<int> SparseInteractionTensor::attempt_counts() const {
    std::vector<int> counts(dims_.students, 0);
    int last_student = -1;
    int last_attempt = -1;
    for (const auto& [key, value] : entries_) {
        (void)value;
        if (key.student != last_student || key.attempt != last_attempt) {
            counts[key.student] += 1;
            last_student = key.student;
            last_attempt = key.attempt;
        }
    }
    return counts;
}

std::vector<Observation> SparseInteractionTensor::to_observations() const {
    std::vector<Observation> out;
    out.reserve(entries_.size());
    for (const auto& [key, value] : entries_) {
        out.push_back(Observation{key.student, key.attempt, key.problem, value});
    }
    return out;
}

AggregationMap::AggregationMap(std::vector<int> assignment) : assignment_(std::move(assignment)) {
    if (assignment_.empty()) {
        agg_len_ = 0;
        return;
    }
    if (assignment_.front() != 0) {
        throw std::invalid_argument("aggregation map must start at slice 0");
    }
    for (std::size_t t = 1; t < assignment_.size(); ++t) {
        const int step = assignment_[t] - assignment_[t - 1];
        if (step != 0 && step != 1) {
            throw std::invalid_argument("aggregation map must be non-decreasing with steps <= 1");
        }
    }
    agg_len_ = assignment_.back() + 1;
}

AggregationMap AggregationMap::identity(int raw_len) {
    std::vector<int> a(static_cast<std::size_t>(raw_len));
    for (int t = 0; t < raw_len; ++t) a[static_cast<std::size_t>(t)] = t;
    return AggregationMap(std::move(a));
}

void AggregationMap::extend_merge() {
    if (assignment_.empty()) {
        throw std::logic_error("cannot merge into an empty aggregation map");
    }
    assignment_.push_back(agg_len_ - 1);
}

void AggregationMap::extend_append() {
    assignment_.push_back(agg_len_);
    agg_len_ += 1;
}

AggregationMap AggregationMap::compose(const AggregationMap& outer) const {
    if (outer.raw_len() != agg_len_) {
        throw std::invalid_argument("composed map length mismatch");
    }
    std::vector<int> a(assignment_.size());
    for (std::size_t t = 0; t < assignment_.size(); ++t) {
        a[t] = outer.assignment_[static_cast<std::size_t>(assignment_[t])];
    }
    return AggregationMap(std::move(a));
}

std::pair<int, int> AggregationMap::raw_range(int agg_slice) const {
    auto lo = std::lower_bound(assignment_.begin(), assignment_.end(), agg_slice);
    auto hi = std::upper_bound(assignment_.begin(), assignment_.end(), agg_slice);
    if (lo == hi) {
        throw std::out_of_range("aggregated slice has no raw attempts");
    }
    return {static_cast<int>(lo - assignment_.begin()), static_cast<int>(hi - assignment_.begin()) - 1};
}

SliceView merge_slices(const SliceView& prev, const SliceView& curr) {
    SliceView out = prev;
    for (const auto& [cell, value] : curr) {
        out[cell] = value; // later attempt wins
    }
    return out;
}

SparseInteractionTensor apply_aggregation(const SparseInteractionTensor& x,
                                          const AggregationMap& w) {
    if (w.raw_len() != x.dims().attempts) {
        throw std::invalid_argument("aggregation map covers " + std::to_string(w.raw_len()) +
                                    " attempts but tensor has " +
                                    std::to_string(x.dims().attempts));
    }
    SparseInteractionTensor out(x.dims().students, w.agg_len(), x.dims().problems);
    // Entries iterate in (student, attempt, problem) order, so within one
    // (student, problem) cell later raw attempts overwrite earlier ones,
    // which is exactly the merge fold.
    for (const auto& [key, value] : x.entries()) {
        out.set(key.student, w.slice_of(key.attempt), key.problem, value);
    }
    return out;
}

std::map<EntryKey, double> confidence_weights(const SparseInteractionTensor& y,
                                              const AggregationMap& w,
                                              const SparseInteractionTensor& raw) {
    // Slice indices of every raw observation, grouped per (student, problem).
    std::map<std::pair<int, int>, std::vector<int>> trial_slices;
    for (const auto& [key, value] : raw.entries()) {
        (void)value;
        trial_slices[{key.student, key.problem}].push_back(w.slice_of(key.attempt));
    }
    std::map<EntryKey, double> weights;
    for (const auto& [key, value] : y.entries()) {
        (void)value;
        const auto& slices = trial_slices[{key.student, key.problem}];
        const auto count = std::upper_bound(slices.begin(), slices.end(), key.attempt) -
                           slices.begin();
        weights.emplace(key, static_cast<double>(count));
    }
    return weights;
}

} // namespace grate
