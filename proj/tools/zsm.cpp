// Command-line surface for the zero-spin mixture toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zsm/zsm.hpp"

namespace {

using zsm::json;

zsm::Config load_config() {
    zsm::Config cfg;
    const char* path = std::getenv("ZSM_CONFIG");
    if (path != nullptr && *path != '\0') {
        std::ifstream in(path);
        if (!in) throw std::runtime_error(std::string("cannot open config file ") + path);
        json j = json::parse(in);
        if (j.contains("log_base"))
            cfg.log_base = j["log_base"] == "e" ? zsm::LogBase::E : zsm::LogBase::Two;
        if (j.contains("exact_threshold")) cfg.exact_threshold = j["exact_threshold"];
        if (j.contains("dimension_cap")) cfg.dimension_cap = j["dimension_cap"];
        if (j.contains("output_format")) cfg.output_format = j["output_format"];
        if (j.contains("seed")) cfg.seed = j["seed"];
        if (j.contains("shards")) cfg.shards = j["shards"];
        if (j.contains("threads")) cfg.threads = j["threads"];
    }
    return cfg;
}

struct RangeArg {
    long lo = 0, hi = 0;
};

RangeArg parse_range(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos)
        throw CLI::ValidationError("--n", "expected lo:hi range");
    RangeArg r;
    try {
        r.lo = std::stol(s.substr(0, pos));
        r.hi = std::stol(s.substr(pos + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--n", "expected lo:hi range");
    }
    if (r.lo < 1 || r.hi < r.lo)
        throw CLI::ValidationError("--n", "range must satisfy 1 <= lo <= hi");
    return r;
}

zsm::MixtureWeights load_weights(const std::string& path) {
    if (path.empty()) return zsm::MixtureWeights::uniform();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weights file " + path);
    return zsm::weights_from_json(json::parse(in));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

bool check(const std::string& name, bool ok, std::string* first_fail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok && first_fail->empty()) *first_fail = name;
    return ok;
}

// Oracle checks for one split: lemma equality, spectrum match, singlet count,
// concavity inequality, local-orthogonality structure.
bool verify_split(const zsm::SplitSpec& split, int trials, const zsm::Config& cfg,
                  std::string* first_fail) {
    const std::string tag = std::to_string(split.total.count) + "q_split_" +
                            std::to_string(split.side_a) + ":" +
                            std::to_string(split.side_b());
    bool all = true;
    auto rep = zsm::oracle::verify_lemma(split, zsm::MixtureWeights::uniform(), cfg);
    all &= check("lemma_equality_" + tag, rep.pass, first_fail);
    all &= check("spectrum_match_" + tag, rep.spectrum_error_a <= 1e-9, first_fail);
    const mpz_class n = zsm::invariant_dimension(split.total);
    all &= check("singlet_count_" + tag, mpz_class(rep.singlet_count) == n, first_fail);
    if (rep.singlet_count <= 64) {
        auto chk = zsm::oracle::random_decomposition_check(split, trials, cfg.seed,
                                                           zsm::MixtureWeights::uniform(), cfg);
        all &= check("concavity_" + tag, chk.pass, first_fail);
    }
    auto ortho = zsm::oracle::local_orthogonality_report(split, cfg);
    bool ortho_ok = true;
    for (long i = 0; i < ortho.overlap_a.rows(); ++i) {
        for (long j = 0; j < ortho.overlap_a.cols(); ++j) {
            const auto& li = ortho.labels[std::size_t(i)];
            const auto& lj = ortho.labels[std::size_t(j)];
            const double v = ortho.overlap_a(i, j);
            if (li.twice_j == lj.twice_j && li.a == lj.a)
                ortho_ok &= std::abs(v - 1.0 / double(li.twice_j + 1)) < 1e-9;
            else
                ortho_ok &= std::abs(v) < 1e-9;
        }
    }
    all &= check("local_orthogonality_" + tag, ortho_ok, first_fail);
    return all;
}

bool verify_su(const zsm::Config& cfg, std::string* first_fail) {
    bool all = true;
    all &= check("su3_m3_dimension", zsm::su_m_invariant_dimension(3, 3) == 1, first_fail);
    all &= check("su3_m6_dimension",
                 zsm::su_m_invariant_dimension(3, 6) == 5 &&
                     zsm::rectangular_syt_count(3, 2) == 5,
                 first_fail);
    all &= check("su3_m3_null_space",
                 zsm::oracle::su_m_invariant_basis(3, 3, cfg).cols() == 1, first_fail);
    all &= check("su3_m6_null_space",
                 zsm::oracle::su_m_invariant_basis(3, 6, cfg).cols() == 5, first_fail);
    bool su2 = true;
    for (int m = 0; m <= 12; m += 2)
        su2 &= zsm::su_m_invariant_dimension(2, m) ==
               zsm::invariant_dimension(zsm::SystemSpec::qubits(m));
    all &= check("su2_matches_qubits", su2, first_fail);
    return all;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement of zero total angular momentum mixtures"};
    app.require_subcommand(1);
    app.fallthrough();

    zsm::Config cfg;
    try {
        cfg = load_config();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string log_base = cfg.log_base == zsm::LogBase::E ? "e" : "2";
    std::string format = cfg.output_format;
    app.add_option("--log-base", log_base, "entropy log base: 2 or e")
        ->check(CLI::IsMember({"2", "e"}));
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--exact-threshold", cfg.exact_threshold,
                   "max constituent count for exact integer tables");
    app.add_option("--dimension-cap", cfg.dimension_cap, "oracle dimension cap");
    app.add_option("--threads", cfg.threads, "worker threads for scans");
    app.add_option("--shards", cfg.shards, "fixed shard count for the sampler");

    // dims
    auto* dims = app.add_subcommand("dims", "multiplicity table and invariant dimension");
    int d_qubits = -1, d_count = -1, d_spin2 = 1, d_unitary = -1;
    dims->add_option("--qubits", d_qubits, "number of qubits");
    dims->add_option("--count", d_count, "number of constituents");
    dims->add_option("--twice-spin", d_spin2, "2s of each constituent");
    dims->add_option("--unitary", d_unitary, "SU(M) rank M (fundamental constituents)");

    // entangle
    auto* ent = app.add_subcommand("entangle", "entanglement report for a bipartite split");
    int e_qubits = -1, e_count = -1, e_spin2 = 1, e_split = -1;
    std::string e_weights;
    ent->add_option("--qubits", e_qubits, "number of qubits");
    ent->add_option("--count", e_count, "number of constituents");
    ent->add_option("--twice-spin", e_spin2, "2s of each constituent");
    ent->add_option("--split", e_split, "constituents on side A")->required();
    ent->add_option("--weights", e_weights, "JSON weights file");

    // scan
    auto* scan = app.add_subcommand("scan", "asymptotic law scans");
    std::string s_law, s_range;
    int s_points = 50, s_spin2 = 1;
    scan->add_option("--law", s_law, "entropy | factor3 | halflog | jmax")
        ->required()
        ->check(CLI::IsMember({"entropy", "factor3", "halflog", "jmax"}));
    scan->add_option("--n", s_range, "n range lo:hi")->required();
    scan->add_option("--points", s_points, "number of log-spaced points");
    scan->add_option("--twice-spin", s_spin2, "2s of each constituent (entropy law)");

    // verify
    auto* ver = app.add_subcommand("verify", "run the brute-force oracle checks");
    int v_qubits = -1, v_split = -1, v_max = 8, v_trials = 50;
    bool v_all = false;
    ver->add_option("--qubits", v_qubits, "number of qubits");
    ver->add_option("--split", v_split, "constituents on side A");
    ver->add_flag("--all", v_all, "verify all splits up to --max-qubits");
    ver->add_option("--max-qubits", v_max, "largest system for --all");
    ver->add_option("--trials", v_trials, "random decompositions per split");
    ver->add_option("--seed", cfg.seed, "RNG seed");

    // distill
    auto* dis = app.add_subcommand("distill", "Monte Carlo distillation run");
    int t_qubits = -1, t_split = -1;
    long t_trials = 100000;
    std::uint64_t t_seed = 0;
    std::string t_weights;
    dis->add_option("--qubits", t_qubits, "number of qubits")->required();
    dis->add_option("--split", t_split, "constituents on side A")->required();
    dis->add_option("--trials", t_trials, "number of trials");
    dis->add_option("--seed", t_seed, "RNG seed");
    dis->add_option("--weights", t_weights, "JSON weights file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    cfg.log_base = log_base == "e" ? zsm::LogBase::E : zsm::LogBase::Two;
    cfg.output_format = format;

    try {
        if (*dims) {
            if (d_unitary >= 2) {
                if (d_count < 0) throw CLI::ValidationError("--count", "required with --unitary");
                json j;
                j["spec"] = zsm::spec_to_json(zsm::SystemSpec::fundamental(d_unitary, d_count));
                j["invariant_dimension"] =
                    zsm::su_m_invariant_dimension(d_unitary, d_count).get_str();
                emit(j);
                return 0;
            }
            int count = d_qubits >= 0 ? d_qubits : d_count;
            int spin2 = d_qubits >= 0 ? 1 : d_spin2;
            if (count < 0) throw CLI::ValidationError("--qubits", "or --count required");
            auto spec = zsm::SystemSpec::spins(count, spin2);
            auto table = zsm::multiplicity_table(spec, cfg.exact_threshold);
            auto n = zsm::invariant_dimension(spec);
            if (cfg.output_format == "csv")
                std::cout << zsm::dims_to_csv(table, n);
            else
                emit(zsm::dims_to_json(table, n));
            return 0;
        }

        if (*ent) {
            int count = e_qubits >= 0 ? e_qubits : e_count;
            int spin2 = e_qubits >= 0 ? 1 : e_spin2;
            if (count < 0) throw CLI::ValidationError("--qubits", "or --count required");
            zsm::SplitSpec split(zsm::SystemSpec::spins(count, spin2), e_split);
            auto rep = zsm::entanglement(split, load_weights(e_weights), cfg);
            emit(zsm::report_to_json(rep));
            return 0;
        }

        if (*scan) {
            auto range = parse_range(s_range);
            auto ns = zsm::log_spaced(range.lo, range.hi, s_points);
            zsm::ScanResult res;
            if (s_law == "entropy")
                res = zsm::entropy_residual_scan(ns, s_spin2, cfg);
            else if (s_law == "jmax")
                res = zsm::jmax_scan(ns);
            else
                res = zsm::entanglement_scaling_scan(ns, cfg);
            if (cfg.output_format == "csv")
                std::cout << zsm::scan_to_csv(res, s_law);
            else
                emit(zsm::scan_to_json(res));
            return 0;
        }

        if (*ver) {
            std::string first_fail;
            bool all = true;
            if (v_all) {
                for (int m = 2; m <= v_max; m += 2)
                    for (int a = 0; a <= m; ++a)
                        all &= verify_split(zsm::SplitSpec(zsm::SystemSpec::qubits(m), a),
                                            v_trials, cfg, &first_fail);
                all &= verify_su(cfg, &first_fail);
            } else {
                if (v_qubits < 0 || v_split < 0)
                    throw CLI::ValidationError("--qubits", "and --split required without --all");
                all &= verify_split(zsm::SplitSpec(zsm::SystemSpec::qubits(v_qubits), v_split),
                                    v_trials, cfg, &first_fail);
            }
            if (!all) {
                std::cerr << "verification failed: " << first_fail << "\n";
                return 1;
            }
            return 0;
        }

        if (*dis) {
            zsm::SplitSpec split(zsm::SystemSpec::qubits(t_qubits), t_split);
            auto run = zsm::simulate(split, load_weights(t_weights), t_trials, t_seed, cfg);
            emit(zsm::run_to_json(run, cfg.log_base));
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const zsm::NormalizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
