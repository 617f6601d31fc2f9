#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffseq/construct.hpp"
#include "ffseq/digital.hpp"
#include "ffseq/funcfield.hpp"

namespace ffseq::cli {

enum class Command { gen, matrices, verify, discrepancy, bounds };

struct RunConfig {
    Command command = Command::gen;
    std::uint32_t p = 2, k = 1;
    FieldKind field = FieldKind::rational;
    std::optional<std::size_t> s;
    std::vector<std::string> places;  // empty: first s places
    Mode mode = Mode::plain;
    std::optional<std::size_t> J, R, m;
    std::optional<std::uint64_t> N;
    int M = 8;
    std::uint64_t Kmax = 1;
    std::optional<int> u, t;
    std::vector<std::uint32_t> e;
    PointFormat format = PointFormat::floats;
    int precision = 17;
    std::string out;  // empty: stdout
};

/// Bad flags or parameters; maps to exit status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// "p^k" or a prime power q.
std::pair<std::uint32_t, std::uint32_t> parse_prime_power(const std::string& text);

/// Places by 1-based position in the canonical enumeration or by their printed form.
std::vector<Place> resolve_places(const FunctionField& F, const std::vector<std::string>& tokens);

/// Runs one subcommand; returns 0 on success, 1 when a verification fails.
/// Throws UsageError for parameters the modules reject.
int dispatch(const RunConfig& config, std::ostream& out);

/// Parses argv and dispatches, writing to `out` unless --out is given.
/// Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffseq::cli
