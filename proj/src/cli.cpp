// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/cli.hpp"

#include "fermient/error.hpp"
#include "fermient/random_states.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fermient::cli {

namespace {

// ---------------------------------------------------------------------------
// JSON output

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void write_json(const Json& v, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, val] : v.items()) {  // nlohmann objects iterate in key order
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                write_json(val, indent + 2, out);
            }
            out += "\n" + close + "}";
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                write_json(v[i], indent + 2, out);
            }
            out += "\n" + close + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

// ---------------------------------------------------------------------------
// Spec parsing helpers

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

int int_field(const Json& obj, const char* key) {
    const Json& v = field(obj, key);
    if (!v.is_number_integer()) parse_fail(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

double number(const Json& v, const std::string& what) {
    if (!v.is_number()) parse_fail(what + " must be a number");
    return v.get<double>();
}

Complex complex_value(const Json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {number(v[0], "real part"), number(v[1], "imaginary part")};
    parse_fail("complex numbers are written as x or [re, im]");
}

OccupationState occupations(const Json& v) {
    if (!v.is_array()) parse_fail("\"occupations\" must be an array of 0/1");
    std::vector<int> occ;
    for (const auto& x : v) {
        if (!x.is_number_integer()) parse_fail("\"occupations\" must be an array of 0/1");
        occ.push_back(x.get<int>());
    }
    return OccupationState(occ);
}

ParsedState pure_state(StateVector psi, std::vector<std::string> warnings = {}) {
    if (!psi.is_normalized(1e-12)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "amplitudes had norm " << psi.norm() << " and were normalized";
        warnings.push_back(msg.str());
        psi = psi.normalized();
    }
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    SpacePtr space = psi.space;
    return ParsedState{space, std::move(psi), std::move(rho), std::move(warnings)};
}

ParsedState parse_fock(const Json& spec) {
    const OccupationState s = occupations(field(spec, "occupations"));
    const SpacePtr space = enumerate_basis(s.particle_count(), s.modes());
    return pure_state(StateVector::basis_state(space, s));
}

ParsedState parse_superposition(const Json& spec) {
    const Json& terms = field(spec, "terms");
    if (!terms.is_array() || terms.empty()) parse_fail("\"terms\" must be a non-empty array");
    SpacePtr space;
    StateVector psi;
    for (const auto& t : terms) {
        const OccupationState s = occupations(field(t, "occupations"));
        if (!space) {
            space = enumerate_basis(s.particle_count(), s.modes());
            psi = StateVector::zero(space);
        }
        if (s.modes() != space->modes() || s.particle_count() != space->particles()) {
            parse_fail("all terms of a superposition need the same N and M");
        }
        psi.amplitudes(static_cast<Index>(space->index_of(s))) += complex_value(field(t, "amplitude"));
    }
    return pure_state(std::move(psi));
}

ParsedState parse_noon(const Json& spec) {
    const int n = int_field(spec, "N");
    const int m = int_field(spec, "m");
    if (n < 1 || m < n) parse_fail("noon needs 1 <= N <= m");
    const SpacePtr space = enumerate_basis(n, 2 * m);
    std::vector<int> left(static_cast<std::size_t>(2 * m), 0);
    std::vector<int> right(static_cast<std::size_t>(2 * m), 0);
    for (int k = 0; k < n; ++k) {
        left[static_cast<std::size_t>(k)] = 1;
        right[static_cast<std::size_t>(m + k)] = 1;
    }
    StateVector psi = StateVector::zero(space);
    psi.amplitudes(static_cast<Index>(space->index_of(OccupationState(left)))) = 1.0 / std::sqrt(2.0);
    psi.amplitudes(static_cast<Index>(space->index_of(OccupationState(right)))) = 1.0 / std::sqrt(2.0);
    return pure_state(std::move(psi));
}

ParsedState parse_mixture(const Json& spec, const std::filesystem::path& base_dir) {
    const Json& comps = field(spec, "components");
    if (!comps.is_array() || comps.empty()) parse_fail("\"components\" must be a non-empty array");
    std::vector<DensityMatrix> states;
    std::vector<double> weights;
    std::vector<std::string> warnings;
    for (const auto& c : comps) {
        ParsedState part = parse_state(field(c, "state"), base_dir);
        if (!states.empty() && (part.space->modes() != states.front().space()->modes() ||
                                part.space->particles() != states.front().space()->particles())) {
            parse_fail("all mixture components need the same N and M");
        }
        weights.push_back(number(field(c, "weight"), "\"weight\""));
        warnings.insert(warnings.end(), part.warnings.begin(), part.warnings.end());
        states.push_back(std::move(part.rho));
    }
    SpacePtr space = states.front().space();
    std::vector<DensityMatrix> same_space;
    for (auto& s : states) same_space.emplace_back(space, s.matrix());
    DensityMatrix rho = DensityMatrix::mixture(same_space, weights);
    return ParsedState{space, std::nullopt, std::move(rho), std::move(warnings)};
}

ParsedState parse_mixed_random(const Json& spec) {
    const int n = int_field(spec, "N");
    const int modes = int_field(spec, "M");
    const auto seed = field(spec, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) parse_fail("\"seed\" must be an integer");
    const int rank = spec.contains("rank") ? int_field(spec, "rank") : 0;
    const SpacePtr space = enumerate_basis(n, modes);
    Rng rng(seed.get<std::uint64_t>());
    DensityMatrix rho = random_mixed(space, rng, rank);
    return ParsedState{space, std::nullopt, std::move(rho), {}};
}

ParsedState parse_maximally_mixed(const Json& spec) {
    DensityMatrix rho = maximally_mixed(int_field(spec, "N"), int_field(spec, "M"));
    SpacePtr space = rho.space();
    return ParsedState{space, std::nullopt, std::move(rho), {}};
}

ParsedState parse_from_file(const Json& spec, const std::filesystem::path& base_dir) {
    const Json& p = field(spec, "path");
    if (!p.is_string()) parse_fail("\"path\" must be a string");
    std::filesystem::path path = p.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) parse_fail("cannot open " + path.string());
    Json data;
    try {
        data = Json::parse(in);
    } catch (const Json::exception& e) {
        parse_fail(path.string() + ": " + e.what());
    }
    const int n = int_field(data, "N");
    const int modes = int_field(data, "M");
    const Json& ordering = field(data, "ordering");
    if (ordering != "descending_lex") parse_fail("only \"descending_lex\" basis ordering is understood");
    const SpacePtr space = enumerate_basis(n, modes);
    const Index d = space->size();
    if (data.contains("psi")) {
        const Json& a = data.at("psi");
        if (!a.is_array() || static_cast<Index>(a.size()) != d) parse_fail("\"psi\" must list D amplitudes");
        StateVector psi = StateVector::zero(space);
        for (Index i = 0; i < d; ++i) psi.amplitudes(i) = complex_value(a[static_cast<std::size_t>(i)]);
        return pure_state(std::move(psi));
    }
    const Json& rows = field(data, "rho");
    if (!rows.is_array() || static_cast<Index>(rows.size()) != d) parse_fail("\"rho\" must have D rows");
    CMatrix rho(d, d);
    for (Index i = 0; i < d; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != d) parse_fail("\"rho\" must have D columns");
        for (Index j = 0; j < d; ++j) rho(i, j) = complex_value(row[static_cast<std::size_t>(j)]);
    }
    return ParsedState{space, std::nullopt, DensityMatrix(space, std::move(rho)), {}};
}

// ---------------------------------------------------------------------------
// Reports

Json evidence_json(const Evidence& e) {
    struct Visitor {
        Json operator()(const std::monostate&) const { return {{"type", "none"}}; }
        Json operator()(const OddOddWitness& w) const {
            Json j = to_json(w);
            j["type"] = "odd_odd_witness";
            return j;
        }
        Json operator()(const NonBlockDiagonal& n) const {
            return {{"type", "non_block_diagonal"}, {"eta_norm", n.eta_norm}};
        }
        Json operator()(const NegativeBlock& n) const {
            return {{"type", "negative_block"}, {"k", n.k}, {"negativity", n.negativity}};
        }
        Json operator()(const SchmidtSpectrum& s) const {
            return {{"type", "schmidt_spectrum"}, {"values", s.values}};
        }
        Json operator()(const BlockCertificates& c) const {
            Json blocks = Json::array();
            for (const auto& b : c.blocks) {
                blocks.push_back({{"k", b.k}, {"rule", to_string(b.rule)}, {"negativity", b.negativity}});
            }
            return {{"type", "block_certificates"}, {"blocks", blocks}};
        }
    };
    return std::visit(Visitor{}, e);
}

// ---------------------------------------------------------------------------
// Command-line plumbing

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::DimensionCapExceeded ? kExitCap : kExitUser;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw UserError("cannot write " + out_path);
    file << text;
}

std::pair<int, int> parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    const auto dots = text.find("..");
    if (eq == std::string::npos || dots == std::string::npos || text.substr(0, eq) != "N") {
        throw UserError("--sweep expects N=a..b, got '" + text + "'");
    }
    try {
        const int a = std::stoi(text.substr(eq + 1, dots - eq - 1));
        const int b = std::stoi(text.substr(dots + 2));
        if (a > b) throw UserError("--sweep range is empty: " + text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw UserError("--sweep expects N=a..b, got '" + text + "'");
    }
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UserError("--omega expects comma-separated numbers, got '" + item + "'");
        }
    }
    return out;
}

struct BasisArgs {
    int n = 0;
    int modes = 0;
    int m = 0;
    bool json = false;
};

int cmd_basis(const BasisArgs& a, std::ostream& out) {
    const SpacePtr space = enumerate_basis(a.n, a.modes);
    const ModeBipartition bp(a.m, a.modes);
    const auto blocks = block_dimensions(bp, a.n);
    if (a.json) {
        Json rows = Json::array();
        for (const auto& b : blocks) {
            rows.push_back({{"k", b.k}, {"first_dim", b.first}, {"second_dim", b.second}, {"size", b.size()}});
        }
        out << dump_json({{"N", a.n}, {"M", a.modes}, {"m", a.m}, {"blocks", rows}, {"dimension", space->dimension()}});
        return kExitOk;
    }
    out << "k\tD_k\tD'_{N-k}\tsize\n";
    for (const auto& b : blocks) out << b.k << '\t' << b.first << '\t' << b.second << '\t' << b.size() << '\n';
    out << "total\t" << space->dimension() << '\n';
    return kExitOk;
}

struct AnalyzeArgs {
    std::string spec_path;
    std::vector<int> m;
    int witness_degree = 1;
    bool json = false;
    bool timing = false;
    std::string out_path;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    std::ifstream in(a.spec_path);
    if (!in) throw UserError("cannot open " + a.spec_path);
    Json spec;
    try {
        spec = Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, a.spec_path + ": " + e.what());
    }
    const ParsedState state = parse_state(spec, std::filesystem::path(a.spec_path).parent_path());
    for (const auto& w : state.warnings) err << "warning: " << w << '\n';

    std::vector<int> ms = a.m;
    if (ms.empty()) {
        for (int m = 0; m <= state.space->modes(); ++m) ms.push_back(m);
    }
    Json analyses = Json::array();
    for (int m : ms) {
        if (m < 0 || m > state.space->modes()) throw UserError("-m must lie in [0, M]");
        analyses.push_back(analyze_state(state, m, a.witness_degree));
    }
    Json report = {{"input", spec},
                   {"N", state.space->particles()},
                   {"M", state.space->modes()},
                   {"dimension", state.space->dimension()},
                   {"pure", state.pure.has_value()},
                   {"purity", state.rho.purity()},
                   {"warnings", state.warnings},
                   {"analyses", analyses}};
    if (a.timing) {
        report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    }
    if (a.json || !a.out_path.empty()) {
        emit(dump_json(report), a.out_path, out);
        return kExitOk;
    }
    out << "N=" << state.space->particles() << " M=" << state.space->modes() << " D=" << state.space->dimension()
        << '\n';
    for (const auto& an : analyses) {
        out << "m=" << an["m"].get<int>() << "  " << an["verdict"]["status"].get<std::string>()
            << "  evidence=" << an["verdict"]["evidence"]["type"].get<std::string>()
            << "  negativity=" << format_double(an["negativity"].get<double>())
            << "  robustness=" << an["robustness"]["kind"].get<std::string>();
        if (!an["robustness"]["value"].is_null()) out << ' ' << format_double(an["robustness"]["value"].get<double>());
        if (!an["witness"].is_null()) {
            out << "  witness=" << an["witness"]["first"].get<std::string>() << ' '
                << an["witness"]["second"].get<std::string>();
        }
        out << '\n';
    }
    return kExitOk;
}

struct QfiArgs {
    std::string scenario;
    int n = 1;
    std::optional<int> modes;
    std::optional<int> m;
    int p = 1;
    bool linear = false;
    std::string omega;
    std::string sweep;
    bool csv = false;
    std::string out_path;
};

QfiReport qfi_point(const QfiArgs& a, int n) {
    if (a.scenario == "noon") {
        const int m = a.m.value_or(a.modes ? *a.modes / 2 : n);
        if (!a.omega.empty()) {
            return scenario_noon(n, m, Dispersion{parse_list(a.omega)});
        }
        return scenario_noon(n, m, Dispersion::linear(2 * m));
    }
    const int modes = a.modes.value_or(2 * n);
    if (a.m && *a.m != modes / 2) throw UserError("the " + a.scenario + " scenario uses m = M/2");
    if (a.scenario == "fock" && !a.omega.empty()) {
        return scenario_fock(n, modes, SpectralWeights{parse_list(a.omega)});
    }
    return a.scenario == "fock" ? scenario_fock(n, modes, a.p) : scenario_bogolubov(n, modes, a.p);
}

int cmd_qfi(const QfiArgs& a, std::ostream& out) {
    std::vector<int> ns;
    if (a.sweep.empty()) {
        ns.push_back(a.n);
    } else {
        const auto [lo, hi] = parse_sweep(a.sweep);
        for (int n = lo; n <= hi; ++n) ns.push_back(n);
    }
    if (a.scenario == "bogolubov" && !a.omega.empty()) throw UserError("--omega is not used by the bogolubov scenario");

    // Points are independent; results land in their own slots so output order
    // follows N no matter which thread finishes first.
    const auto count = static_cast<int>(ns.size());
    std::vector<std::optional<QfiReport>> reports(ns.size());
    std::vector<std::exception_ptr> failures(ns.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        try {
            reports[static_cast<std::size_t>(i)] = qfi_point(a, ns[static_cast<std::size_t>(i)]);
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    std::string text;
    if (a.csv) {
        text = "N,F,delta_theta,shot_noise_ref,heisenberg_ref\n";
        for (const auto& r : reports) {
            text += std::to_string(r->particles) + "," + format_double(r->qfi) + "," + format_double(r->delta_theta) +
                    "," + format_double(r->shot_noise_ref) + "," + format_double(r->heisenberg_ref) + "\n";
        }
    } else if (a.sweep.empty()) {
        text = dump_json(to_json(*reports.front()));
    } else {
        Json points = Json::array();
        for (const auto& r : reports) points.push_back(to_json(*r));
        text = dump_json({{"scenario", a.scenario}, {"points", points}});
    }
    emit(text, a.out_path, out);
    return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string dump_json(const Json& value) {
    std::string out;
    write_json(value, 0, out);
    out += '\n';
    return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

ParsedState parse_state(const Json& spec, const std::filesystem::path& base_dir) {
    const Json& kind = field(spec, "kind");
    if (!kind.is_string()) parse_fail("\"kind\" must be a string");
    const std::string k = kind.get<std::string>();
    try {
        if (k == "fock") return parse_fock(spec);
        if (k == "superposition") return parse_superposition(spec);
        if (k == "noon") return parse_noon(spec);
        if (k == "mixture") return parse_mixture(spec, base_dir);
        if (k == "mixed_random") return parse_mixed_random(spec);
        if (k == "maximally_mixed") return parse_maximally_mixed(spec);
        if (k == "from_file") return parse_from_file(spec, base_dir);
    } catch (const Json::exception& e) {
        parse_fail(std::string("malformed ") + k + " spec: " + e.what());
    }
    parse_fail("unknown state kind \"" + k + "\"");
}

Json to_json(const Verdict& v) {
    return {{"status", to_string(v.status)}, {"evidence", evidence_json(v.evidence)}};
}

Json to_json(const Robustness& r) {
    return {{"kind", to_string(r.kind)}, {"value", r.kind == Robustness::Kind::Infinite ? Json(nullptr) : Json(r.value)}};
}

Json to_json(const OddOddWitness& w) {
    return {{"first", w.first.to_string()}, {"second", w.second.to_string()}, {"value", complex_json(w.value)}};
}

Json to_json(const QfiReport& r) {
    Json j = {{"scenario", r.scenario},
              {"N", r.particles},
              {"M", r.modes},
              {"m", r.first_modes},
              {"weights", r.weights},
              {"qfi", r.qfi},
              {"delta_theta", std::isfinite(r.delta_theta) ? Json(r.delta_theta) : Json(nullptr)},
              {"variance_bound", r.variance_bound},
              {"shot_noise_ref", r.shot_noise_ref},
              {"heisenberg_ref", r.heisenberg_ref},
              {"closed_form", r.closed_form}};
    if (r.exponent) j["p"] = *r.exponent;
    if (r.input_verdict) j["input_verdict"] = to_string(*r.input_verdict);
    if (r.transformed_verdict) j["transformed_verdict"] = to_string(*r.transformed_verdict);
    if (r.qfi_transformed) {
        j["qfi_transformed"] = *r.qfi_transformed;
        j["invariance_gap"] = std::abs(*r.qfi_transformed - r.qfi);
    }
    return j;
}

Json analyze_state(const ParsedState& state, int first_modes, int witness_degree) {
    const ModeBipartition bp = ModeBipartition(first_modes, state.space->modes()).bound_to(*state.space);
    const Verdict verdict = classify(state.rho, bp);
    const BlockDecomposition bd = block_decompose(state.rho, bp);
    const auto witness = odd_odd_witness(state.rho, bp, witness_degree);

    Json blocks = Json::array();
    for (const auto& b : bd.blocks) {
        blocks.push_back({{"k", b.dims.k}, {"weight", b.weight}, {"first_dim", b.dims.first}, {"second_dim", b.dims.second}});
    }
    return {{"m", first_modes},
            {"verdict", to_json(verdict)},
            {"negativity", negativity(state.rho, bp)},
            {"robustness", to_json(robustness(state.rho, bp))},
            {"witness", witness ? to_json(*witness) : Json(nullptr)},
            {"witness_degree", witness_degree},
            {"eta_norm", bd.eta_norm},
            {"blocks", blocks}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fermient: entanglement and interferometry of fixed-number fermion states"};
    app.require_subcommand(1);

    BasisArgs basis;
    auto* b = app.add_subcommand("basis", "Sector dimensions D_k, D'_{N-k} of an (m, M-m) bipartition");
    b->add_option("-N", basis.n, "particle number")->required();
    b->add_option("-M", basis.modes, "mode number")->required();
    b->add_option("-m", basis.m, "modes in the first partition")->required();
    b->add_flag("--json", basis.json, "emit JSON");

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Classify a state under one or more bipartitions");
    an->add_option("spec", analyze.spec_path, "JSON state spec")->required();
    an->add_option("-m", analyze.m, "first-partition size; repeatable (default: every m in [0, M])");
    an->add_option("--witness-degree", analyze.witness_degree, "max odd monomial degree per side")
        ->check(CLI::PositiveNumber);
    an->add_flag("--json", analyze.json, "emit JSON");
    an->add_flag("--timing", analyze.timing, "add wall-clock timing to the report");
    an->add_option("--out", analyze.out_path, "write the JSON report here");

    QfiArgs q;
    auto* qf = app.add_subcommand("qfi", "Quantum Fisher information of an interferometric scenario");
    qf->add_option("scenario", q.scenario, "fock | bogolubov | noon")
        ->required()
        ->check(CLI::IsMember({"fock", "bogolubov", "noon"}));
    qf->add_option("-N", q.n, "particle number");
    qf->add_option("-M", q.modes, "mode number (default 2N, or 2m for noon)");
    qf->add_option("-m", q.m, "modes per partition");
    qf->add_option("-p", q.p, "weights omega_k = k^p (fock, bogolubov)");
    qf->add_flag("--linear", q.linear, "Omega_k = k (noon; the default)");
    qf->add_option("--omega", q.omega, "comma-separated omega_k (fock) or Omega_k (noon)");
    qf->add_option("--sweep", q.sweep, "N=a..b");
    qf->add_flag("--csv", q.csv, "emit a CSV table");
    qf->add_option("--out", q.out_path, "write the output here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUser;
    }

    try {
        if (b->parsed()) return cmd_basis(basis, out);
        if (an->parsed()) return cmd_analyze(analyze, out, err);
        if (q.linear && !q.omega.empty()) throw UserError("--linear and --omega are exclusive");
        return cmd_qfi(q, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const UserError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUser;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace fermient::cli
