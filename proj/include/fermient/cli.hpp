// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief The `fermient` command line: state specs, reports and the
 *        basis / analyze / qfi subcommands.
 *
 * Exit codes are a stable contract: 0 success, 2 user error (bad flags,
 * unparseable or invalid input), 3 dimension cap exceeded.
 */

#pragma once

#include "fermient/entanglement.hpp"
#include "fermient/fock_space.hpp"
#include "fermient/metrology.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fermient::cli {

using Json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 2;
inline constexpr int kExitCap = 3;

/// Pretty JSON with keys sorted, 2-space indent, LF endings and doubles in
/// %.17g (always with a '.' or exponent). Non-finite doubles become null.
std::string dump_json(const Json& value);

/// [re, im]
Json complex_json(Complex z);

struct ParsedState {
    SpacePtr space;
    std::optional<StateVector> pure;  ///< set for pure specs
    DensityMatrix rho;
    std::vector<std::string> warnings;
};

/**
 * Builds a state from a JSON spec. Kinds:
 *  - fock            {"occupations": [1,0,...]}
 *  - superposition   {"terms": [{"occupations": [...], "amplitude": x | [re,im]}, ...]}
 *  - noon            {"N": n, "m": m}; fermions in modes 1..N or m+1..m+N
 *  - mixture         {"components": [{"weight": w, "state": <spec>}, ...]}
 *  - mixed_random    {"N", "M", "seed", optional "rank"}
 *  - maximally_mixed {"N", "M"}
 *  - from_file       {"path": p}; p holds {"N", "M", "ordering": "descending_lex",
 *                    and "psi": [[re,im], ...] or "rho": [[[re,im], ...], ...]} row-major
 * Relative paths resolve against `base_dir`. Throws Error(ParseError) on
 * malformed specs; library errors propagate unchanged.
 */
ParsedState parse_state(const Json& spec, const std::filesystem::path& base_dir = {});

Json to_json(const Verdict& v);
Json to_json(const Robustness& r);
Json to_json(const OddOddWitness& w);
Json to_json(const QfiReport& r);

/// Full analysis of one state under one bipartition.
Json analyze_state(const ParsedState& state, int first_modes, int witness_degree);

/// Entry point used by tools/fermient.cpp and by the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with argv[0] omitted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermient::cli
