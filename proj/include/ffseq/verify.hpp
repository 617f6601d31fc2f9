#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffseq/construct.hpp"
#include "ffseq/digital.hpp"

namespace ffseq {

struct VerifyReport {
    std::string property;
    bool pass = true;
    bool skipped = false;
    std::string range;  // parameters checked, for display

    // first counterexample when failing
    int m = -1;
    std::vector<std::uint32_t> d;
    std::int64_t block = -1;
    std::string interval;
    std::string note;

    /// "PASS", "SKIP" or "FAIL m=<m> d=(..) [k=<k>] [interval=..]".
    std::string to_string() const;
};

/// Interval-volume condition of the geometric check: every elementary interval
/// with volume >= q^(u-m) (the definition used throughout), or only those with
/// volume exactly q^(u-m).
enum class VolumeRule { at_least, exactly };

/// Rows of every C^(i) restricted to the first m columns: for each d with
/// e_i | d_i and sum d_i <= m - u, the first d_i rows of all C^(i) are
/// linearly independent.
VerifyReport net_rank_check(const Field& F, const std::vector<GenMatrix>& mats, int u,
                            const std::vector<std::uint32_t>& e, int m);

/// The same condition for every u < m <= M (d nonzero).
VerifyReport seq_rank_check(const Field& F, const std::vector<GenMatrix>& mats, int u,
                            const std::vector<std::uint32_t>& e, int M);
VerifyReport seq_rank_check_serial(const Field& F, const std::vector<GenMatrix>& mats, int u,
                                   const std::vector<std::uint32_t>& e, int M);

/// Counts points of q^m-point sets in elementary intervals, on digit prefixes.
VerifyReport geometric_net_check(const DigitPointSet& pts, int u, int m, const std::vector<std::uint32_t>& e,
                                 VolumeRule rule = VolumeRule::at_least);

/// geometric_net_check on every block k <= Kmax for every u < m <= M.
VerifyReport sequence_block_check(const Field& F, const std::vector<GenMatrix>& mats, int u,
                                  const std::vector<std::uint32_t>& e, int M, std::uint64_t Kmax);

struct MinimalT {
    int t = 0;
    int M = 0;
    VerifyReport report;  // the classical check run at t
};

/// Observed minimal t for m <= M with e = (1,...,1).
MinimalT minimal_t(const Field& F, const std::vector<GenMatrix>& mats, int M);

/// u + sum(e_i - 1), capped at m when m is given.
int t_from_ue(int u, const std::vector<std::uint32_t>& e, std::optional<int> m = std::nullopt);

/// Row d of C^(i) has length <= g + s v floor((d-1)/v) + i v.
VerifyReport row_length_audit(const std::vector<GenMatrix>& mats, int g, std::uint32_t v, std::size_t s);

/// Points with coordinates num / den (same den for all coordinates).
struct RationalPointSet {
    std::uint64_t den = 1;
    std::size_t s = 1;
    std::vector<std::uint64_t> num;  // num[n*s + i]

    std::size_t size() const { return s ? num.size() / s : 0; }
    static RationalPointSet from_digits(const DigitPointSet& pts);
};

using Rational = boost::multiprecision::cpp_rational;

/// Exact star discrepancy for s <= 3.
Rational star_discrepancy_exact(const RationalPointSet& pts);
Rational star_discrepancy_exact_serial(const RationalPointSet& pts);

/// A base-2 point set from two m x m generating matrices that satisfies the
/// equality-volume counts for u = m-3, e = (2,3) but not for u = m-2.
struct EqualityRuleWitness {
    std::vector<GenMatrix> matrices;
    DigitPointSet points;
    std::uint64_t tries = 0;
};
EqualityRuleWitness find_equality_rule_witness(int m, std::uint64_t seed = 1);

}  // namespace ffseq
