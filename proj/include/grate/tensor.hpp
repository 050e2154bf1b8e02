#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace grate {

/// One graded interaction: student u solved problem i at attempt t
/// and received a normalized score in [0,1].
struct Observation {
    int student = 0;
    int attempt = 0;
    int problem = 0;
    double score = 0.0;

    friend auto operator<=>(const Observation&, const Observation&) = default;
};

struct TensorDims {
    int students = 0; // M
    int attempts = 0; // T (or T-tilde for aggregated tensors)
    int problems = 0; // N

    friend bool operator==(const TensorDims&, const TensorDims&) = default;
};

/// Key identifying one tensor cell, ordered (student, attempt, problem)
/// so map iteration is deterministic.
struct EntryKey {
    int student = 0;
    int attempt = 0;
    int problem = 0;

    friend auto operator<=>(const EntryKey&, const EntryKey&) = default;
};

/// A single attempt slice viewed as (student, problem) -> score.
using SliceView = std::map<std::pair<int, int>, double>;

/// Sparse student x attempt x problem score tensor. Entries are stored
/// in a sorted map so iteration order is reproducible run to run.
class SparseInteractionTensor {
public:
    SparseInteractionTensor() = default;
    SparseInteractionTensor(int students, int attempts, int problems)
        : dims_{students, attempts, problems} {}

    const TensorDims& dims() const { return dims_; }
    std::size_t observed_count() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const std::map<EntryKey, double>& entries() const { return entries_; }

    /// Insert a new observation. Throws on out-of-range indices or a
    /// duplicate (student, attempt, problem) triple.
    void add(int student, int attempt, int problem, double score);

    /// Insert or overwrite. Used when folding raw slices into an
    /// aggregated slice, where later attempts replace earlier values.
    void set(int student, int attempt, int problem, double score);

    bool contains(int student, int attempt, int problem) const {
        return entries_.count(EntryKey{student, attempt, problem}) > 0;
    }

    /// Value at a cell; throws std::out_of_range if unobserved.
    double at(int student, int attempt, int problem) const;

    /// All observations at one attempt index as a (student, problem) map.
    SliceView slice(int attempt) const;

    /// Copy with only the entries whose attempt index is < attempt_limit;
    /// the attempt dimension shrinks to attempt_limit.
    SparseInteractionTensor restrict_attempts(int attempt_limit) const;

    /// Number of distinct attempt indices per student.
    std::vector<int> attempt_counts() const;

    std::vector<Observation> to_observations() const;

    void grow_attempts(int attempts) {
        if (attempts > dims_.attempts) dims_.attempts = attempts;
    }

    friend bool operator==(const SparseInteractionTensor& a, const SparseInteractionTensor& b) {
        return a.dims_ == b.dims_ && a.entries_ == b.entries_;
    }

private:
    void check_range(int student, int attempt, int problem) const;

    TensorDims dims_;
    std::map<EntryKey, double> entries_;
};

/// Assignment of raw attempt indices to aggregated slice indices: the
/// 0/1 matrix W flattened to one slice index per raw attempt. Only
/// consecutive raw attempts may share a slice, so the assignment is
/// non-decreasing with steps of at most 1.
class AggregationMap {
public:
    AggregationMap() = default;

    /// Build from an explicit assignment array; validates shape.
    explicit AggregationMap(std::vector<int> assignment);

    static AggregationMap identity(int raw_len);

    int raw_len() const { return static_cast<int>(assignment_.size()); }
    int agg_len() const { return agg_len_; }
    const std::vector<int>& assignment() const { return assignment_; }
    int slice_of(int raw_attempt) const { return assignment_.at(raw_attempt); }

    /// Extend by one raw attempt that merges into the current last slice.
    void extend_merge();
    /// Extend by one raw attempt that opens a new slice.
    void extend_append();

    /// Map composition: applying *this then `outer` equals applying the
    /// returned map once.
    AggregationMap compose(const AggregationMap& outer) const;

    /// Raw attempt range [first, last] assigned to an aggregated slice.
    std::pair<int, int> raw_range(int agg_slice) const;

    friend bool operator==(const AggregationMap&, const AggregationMap&) = default;

private:
    std::vector<int> assignment_;
    int agg_len_ = 0;
};

/// Merge two attempt slices: values observed in `curr` win, otherwise
/// the `prev` value survives. The observed set is the union.
SliceView merge_slices(const SliceView& prev, const SliceView& curr);

/// Aggregate the attempt mode of `x` according to `w`: each output
/// slice is the left-fold of merge_slices over its raw slices in
/// ascending attempt order. Throws on raw-length mismatch.
SparseInteractionTensor apply_aggregation(const SparseInteractionTensor& x,
                                          const AggregationMap& w);

/// Confidence weight per observed aggregated entry: the number of raw
/// observations of (student, problem) in slices up to and including the
/// entry's slice. Always >= 1 on observed entries.
std::map<EntryKey, double> confidence_weights(const SparseInteractionTensor& y,
                                              const AggregationMap& w,
                                              const SparseInteractionTensor& raw);

} // namespace grate
