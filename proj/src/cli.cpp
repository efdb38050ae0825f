#include "geoqm/cli.hpp"

#include "geoqm/alt_hamiltonian.hpp"
#include "geoqm/classical_integrability.hpp"
#include "geoqm/coulomb_map.hpp"
#include "geoqm/deformed_oscillator.hpp"
#include "geoqm/degrees_of_freedom.hpp"
#include "geoqm/independence.hpp"
#include "geoqm/io.hpp"
#include "geoqm/observable_geometry.hpp"
#include "geoqm/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace geoqm::cli {

namespace {

using io::Json;

struct Globals {
    std::uint64_t seed = 0;
    int precision = 12;
    std::string output;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double num(double x, const Globals& g) { return io::round_sig(x, g.precision); }

HermitianOperator read_operator(const std::string& path) {
    const CMatrix m = io::matrix_from_json(io::read_json_file(path));
    try {
        return HermitianOperator(m);
    } catch (const std::invalid_argument& e) {
        throw io::InputError(path + ": " + e.what());
    }
}

// --- brackets ---------------------------------------------------------------

struct BracketsArgs {
    std::string a, b;
    BracketKind kind = BracketKind::poisson;
    int samples = 20;
};

std::string run_brackets(const BracketsArgs& args, const Globals& g) {
    const HermitianOperator a = read_operator(args.a);
    const HermitianOperator b = read_operator(args.b);
    if (a.dim() != b.dim()) throw io::InputError("brackets: operators have different dimensions");
    const QuadraticForm form = bracket(a, b, args.kind);
    const KahlerTriple k = standard_kahler(a.dim());
    double worst = 0.0;
    for (const RealPoint& psi : sample_points(a.dim(), static_cast<std::size_t>(args.samples), g.seed)) {
        const Complex tensor = contract_brackets(k, quad_gradient(a, psi), quad_gradient(b, psi), args.kind);
        worst = std::max(worst, std::abs(tensor - form(psi)));
    }
    static const std::map<BracketKind, std::string> names{
        {BracketKind::riemann, "riemann"}, {BracketKind::poisson, "poisson"}, {BracketKind::star, "star"}};
    Json j;
    j["kind"] = names.at(args.kind);
    j["operator"] = io::matrix_to_json(form.op, g.precision);
    j["contraction_check"] = {{"samples", args.samples}, {"seed", g.seed}, {"max_abs_error", num(worst, g)}};
    return dump(j);
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
    std::string a;
    int trials = 0;
    double tol = 1e-10;
    int max_iterations = 20000;
};

std::string run_spectrum(const SpectrumArgs& args, const Globals& g, bool& converged) {
    const HermitianOperator a = read_operator(args.a);
    CriticalSearchOptions opts;
    opts.trials = args.trials;
    opts.tol = args.tol;
    opts.max_iterations = args.max_iterations;
    opts.seed = g.seed;
    const CriticalSpectrum s = critical_spectrum(a, opts);
    converged = s.complete;
    std::ostringstream os;
    io::CsvWriter csv(os, g.precision);
    csv.header({"level", "value", "multiplicity"});
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        csv.cell(static_cast<long long>(i)).cell(s.levels[i].value).cell(s.levels[i].multiplicity);
        csv.end_row();
    }
    return os.str();
}

// --- independence -------------------------------------------------------------

struct IndependenceArgs {
    std::vector<std::string> ops;
    bool with_square = false;
    int samples = 200;
    double svd_tol = 1e-8;
};

std::string run_independence(const IndependenceArgs& args, const Globals& g) {
    std::vector<HermitianOperator> ops;
    std::vector<std::string> names;
    for (const auto& path : args.ops) {
        ops.push_back(read_operator(path));
        names.push_back(path.substr(path.find_last_of('/') + 1));
    }
    if (args.with_square) {
        if (ops.empty()) throw io::InputError("independence: --with-square needs an operator");
        ops.push_back(HermitianOperator(ops.front().matrix() * ops.front().matrix()));
        names.push_back(names.front() + "^2");
    }
    if (ops.size() < 2) throw io::InputError("independence: need at least two operators");
    for (const auto& op : ops) {
        if (op.dim() != ops.front().dim()) throw io::InputError("independence: dimension mismatch");
    }
    IndependenceOptions opts;
    opts.svd_tol = args.svd_tol;
    const auto pts = sample_points(ops.front().dim(), static_cast<std::size_t>(args.samples), g.seed);
    const IndependenceReport rep = independence_test(ops, pts, opts, names);
    Json j;
    j["functions"] = rep.functions;
    j["seed"] = g.seed;
    j["samples"] = args.samples;
    j["full_rank_count"] = rep.full_rank_count;
    j["verdict"] = to_string(rep.verdict);
    Json per = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        per.push_back({{"rank", rep.jacobian_rank_per_point[i]},
                       {"min_singular_value", num(rep.min_singular_value_per_point[i], g)}});
    }
    j["per_sample"] = per;
    return dump(j);
}

// --- kepler -------------------------------------------------------------------

KeplerState read_kepler_state(const std::string& path) {
    const Json j = io::read_json_file(path);
    if (!j.is_object()) throw io::InputError(path + ": expected an object");
    KeplerState s;
    const std::pair<const char*, double*> fields[] = {
        {"r", &s.r},         {"theta", &s.theta},     {"phi", &s.phi}, {"p_r", &s.p_r},
        {"p_theta", &s.p_theta}, {"p_phi", &s.p_phi}, {"m", &s.m},     {"k", &s.k}};
    for (const auto& [name, dst] : fields) {
        if (!j.contains(name)) continue;
        if (!j.at(name).is_number()) throw io::InputError(path + ": \"" + name + "\" must be a number");
        *dst = j.at(name).get<double>();
    }
    return s;
}

std::string run_kepler(const std::string& state, const Globals& g) {
    const KeplerState s = read_kepler_state(state);
    const KeplerChart c = kepler_chart(s);
    const KeplerPrintedForms printed = kepler_printed_forms(s);
    Json j;
    j["J"] = {num(c.J[0], g), num(c.J[1], g), num(c.J[2], g)};
    Json angles = Json::array();
    for (const auto& a : c.angles) angles.push_back(a ? Json(num(*a, g)) : Json(nullptr));
    j["angles"] = angles;
    j["energy"] = num(c.energy, g);
    j["H"] = num(c.H, g);
    j["nu"] = num(c.nu, g);
    j["frequencies"] = {num(c.frequencies[0], g), num(c.frequencies[1], g), num(c.frequencies[2], g)};
    j["printed_forms"] = {{"J1", num(printed.J1, g)}, {"H", num(printed.H, g)}, {"f", num(printed.f, g)}};
    return dump(j);
}

// --- flow ---------------------------------------------------------------------

struct FlowArgs {
    std::string state;
    double t = 1.0;
    std::string factor = "const";
    double omega = 1.0;
    int samples = 10;
};

std::string run_flow(const FlowArgs& args, const Globals& g) {
    const RealPoint x = io::state_from_json(io::read_json_file(args.state));
    if (x.n() != 1) throw io::InputError("flow: state must have n = 1");
    if (args.samples < 1) throw io::InputError("flow: --samples must be >= 1");
    RadialFactor f;
    const double omega = args.omega;
    if (args.factor == "const") {
        f = [omega](double) { return omega; };
    } else if (args.factor == "r2") {
        f = [](double r2) { return r2; };
    } else {
        f = [](double r2) { return std::sin(r2); };
    }
    const double x0 = x.q()(0);
    const double p0 = x.p()(0);
    std::ostringstream os;
    io::CsvWriter csv(os, g.precision);
    csv.header({"t", "x", "p", "radius"});
    for (int i = 0; i <= args.samples; ++i) {
        const double t = args.t * i / args.samples;
        const auto [xt, pt] = conformal_flow(x0, p0, t, f);
        csv.cell(t).cell(xt).cell(pt).cell(std::hypot(xt, pt));
        csv.end_row();
    }
    return os.str();
}

// --- deform -------------------------------------------------------------------

struct DeformArgs {
    int dim = 8;
    double hbar = 0.3;
    std::string mode = "q";
    std::string profile = "q";
};

std::string run_deform(const DeformArgs& args, const Globals& g) {
    if (args.dim < 2) throw io::InputError("deform: --dim must be >= 2");
    if (!(args.hbar > 0.0)) throw io::InputError("deform: --hbar must be positive");
    const Profile f = args.profile == "q" ? q_deformation(args.hbar) : Profile([](int) { return 1.0; });
    std::ostringstream os;
    io::CsvWriter csv(os, g.precision);
    if (args.mode == "q") {
        const DeformedOscillator osc = deform(fock(args.dim), f);
        const RMatrix comm = commutator(osc.A, osc.A_dag);
        const RVector closed = deformed_commutator_closed_form(osc);
        const DeformedMetric metric = deformed_metric(osc);
        const RMatrix comm_metric = metric_matrix_elements(metric, comm);
        const RVector hq = hq_operator(args.dim, args.hbar).matrix().diagonal().real();
        const RVector qcomm = q_commutator_diagonal(args.dim, args.hbar);
        csv.header({"n", "f", "N_eigenvalue", "Hq_eigenvalue", "comm_fock", "comm_closed_form",
                    "comm_metric", "comm_q_formula", "metric_m"});
        for (Eigen::Index n = 0; n < args.dim; ++n) {
            csv.cell(static_cast<long long>(n)).cell(osc.f_values(n)).cell(osc.N_op(n, n)).cell(hq(n));
            csv.cell(comm(n, n));
            if (n + 1 < args.dim) {
                csv.cell(closed(n));
            } else {
                csv.cell(std::string());  // truncation boundary
            }
            csv.cell(comm_metric(n, n));
            if (args.profile == "q") {
                csv.cell(qcomm(n));
            } else {
                csv.cell(std::string());
            }
            csv.cell(metric.m_diag(n));
            csv.end_row();
        }
    } else {
        const TwoModeKind kind = args.mode == "symmetric" ? TwoModeKind::symmetric : TwoModeKind::broken;
        const RVector h = deform_2d(args.dim, f, kind).matrix().diagonal().real();
        csv.header({"n_a", "n_b", "energy"});
        for (Eigen::Index a = 0; a < args.dim; ++a)
            for (Eigen::Index b = 0; b < args.dim; ++b) {
                csv.cell(static_cast<long long>(a)).cell(static_cast<long long>(b)).cell(h(a * args.dim + b));
                csv.end_row();
            }
    }
    return os.str();
}

// --- coulomb ------------------------------------------------------------------

struct CoulombArgs {
    int dim = 2;
    double k = 1.0;
    double m = 1.0;
    int levels = 8;
};

std::string run_coulomb(const CoulombArgs& args, const Globals& g) {
    const CoulombSpectrum s = coulomb_spectrum(args.dim, args.k, args.m, args.levels);
    std::ostringstream os;
    io::CsvWriter csv(os, g.precision);
    csv.header({"level", "n", "energy", "degeneracy", "omega"});
    for (const auto& l : s.levels) {
        csv.cell(l.index).cell(l.n).cell(l.energy).cell(static_cast<long long>(l.degeneracy)).cell(l.omega);
        csv.end_row();
    }
    return os.str();
}

// --- factorize ----------------------------------------------------------------

struct FactorizeArgs {
    std::string a;
    double tol = 1e-10;
};

std::string run_factorize(const FactorizeArgs& args, const Globals& g) {
    const RMatrix a = io::real_matrix_from_json(io::read_json_file(args.a));
    FactorizeOptions opts;
    opts.tol = args.tol;
    opts.seed = g.seed;
    const FactorizationFamily fam = factorize(a, opts);
    Json j;
    j["family_dimension"] = fam.family_dimension;
    j["singular_lambda"] = fam.singular_lambda;
    Json sols = Json::array();
    for (const auto& s : fam.solutions) {
        sols.push_back({{"Lambda", io::matrix_to_json(s.Lambda, g.precision)},
                        {"H", io::matrix_to_json(s.H, g.precision)},
                        {"residual", num(s.residual, g)}});
    }
    j["solutions"] = sols;
    Json traces = Json::array();
    for (double t : odd_traces(a, 2)) traces.push_back(num(t, g));
    j["odd_traces"] = traces;
    j["diagnostics"] = fam.diagnostics;
    return dump(j);
}

// --- dof ----------------------------------------------------------------------

struct DofArgs {
    std::vector<long long> pair;
    long long unpair = -1;
    long long table = -1;
    long long split = -1;
    double hbar = 1.0;
    double omega = 1.0;
};

std::string run_dof(const DofArgs& args, const Globals& g, std::ostream& err) {
    std::ostringstream os;
    if (!args.pair.empty()) {
        os << cantor_pair(args.pair[0], args.pair[1]) << '\n';
    } else if (args.unpair >= 0) {
        const auto [n1, n2] = cantor_unpair(args.unpair);
        os << n1 << ',' << n2 << '\n';
    } else if (args.table >= 0) {
        os << pairing_table(args.table).to_csv();
    } else {
        const SplitOperators s = build_split_operators(args.split, args.hbar, args.omega);
        for (const auto& w : s.warnings) err << "warning: " << w << '\n';
        io::CsvWriter csv(os, g.precision);
        csv.header({"k", "n1", "n2", "H"});
        for (Eigen::Index k = 0; k < s.dim; ++k) {
            csv.cell(static_cast<long long>(k))
                .cell(static_cast<long long>(s.n1(k)))
                .cell(static_cast<long long>(s.n2(k)))
                .cell(s.h(k));
            csv.end_row();
        }
    }
    return os.str();
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
    if (g.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(g.output, std::ios::binary);
    if (!f) throw io::InputError("cannot write " + g.output);
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical toolkit for the geometric formulation of quantum mechanics and "
                 "classical integrability on finite-dimensional truncations.",
                 "geoqm"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Seed for all random sampling")->capture_default_str();
    app.add_option("--precision", g.precision, "Significant digits for numeric output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_option("-o,--output", g.output, "Write the result to this file instead of stdout");

    // brackets
    BracketsArgs ba;
    auto* brackets = app.add_subcommand(
        "brackets", "Brackets of quadratic observables f_A = <psi, A psi>/2: Jordan (riemann), Lie (poisson) "
                    "and star products, checked against the Kahler tensor contractions");
    brackets->add_option("--a", ba.a, "Matrix JSON for A")->required()->check(CLI::ExistingFile);
    brackets->add_option("--b", ba.b, "Matrix JSON for B")->required()->check(CLI::ExistingFile);
    const std::map<std::string, BracketKind> kinds{
        {"riemann", BracketKind::riemann}, {"poisson", BracketKind::poisson}, {"star", BracketKind::star}};
    brackets->add_option("--kind", ba.kind, "riemann | poisson | star")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    brackets->add_option("--samples", ba.samples, "Random states for the contraction check")
        ->check(CLI::Range(1, 100000));

    // spectrum
    SpectrumArgs sa;
    auto* spectrum = app.add_subcommand(
        "spectrum", "Critical values of the expectation-value function e_A on the unit sphere");
    spectrum->add_option("--a", sa.a, "Matrix JSON for A")->required()->check(CLI::ExistingFile);
    spectrum->add_option("--trials", sa.trials, "Random starts (default 2 * dim, must be >= dim)");
    spectrum->add_option("--tol", sa.tol, "Gradient tolerance")->check(CLI::PositiveNumber);
    spectrum->add_option("--max-iterations", sa.max_iterations, "Iteration cap per search")
        ->check(CLI::Range(1, 100000000));

    // independence
    IndependenceArgs ia;
    auto* independence = app.add_subcommand(
        "independence", "Functional independence of quadratic observables from the rank of their differentials");
    independence->add_option("--ops", ia.ops, "Matrix JSON files")->required()->check(CLI::ExistingFile);
    independence->add_flag("--with-square", ia.with_square, "Append the square of the first operator");
    independence->add_option("--samples", ia.samples, "Random states")->check(CLI::Range(10, 1000000));
    independence->add_option("--svd-tol", ia.svd_tol, "Relative singular-value threshold")
        ->check(CLI::PositiveNumber);

    // kepler
    std::string kepler_state;
    auto* kepler = app.add_subcommand("kepler", "Action-angle chart, energy and frequencies of a bound Kepler state");
    kepler->add_option("--state", kepler_state, "Kepler state JSON (r, theta, phi, p_r, p_theta, p_phi, m, k)")
        ->required()
        ->check(CLI::ExistingFile);

    // flow
    FlowArgs fa;
    auto* flow = app.add_subcommand(
        "flow", "Closed-form flow of x' = p f(x^2+p^2), p' = -x f(x^2+p^2) (conformal factor f)");
    flow->add_option("--state", fa.state, "State JSON with n = 1")->required()->check(CLI::ExistingFile);
    flow->add_option("--t", fa.t, "Final time");
    flow->add_option("--factor", fa.factor, "const | r2 | sin-r2")
        ->check(CLI::IsMember({"const", "r2", "sin-r2"}));
    flow->add_option("--omega", fa.omega, "Value of f for --factor const");
    flow->add_option("--samples", fa.samples, "Number of time steps in the table")->check(CLI::Range(1, 1000000));

    // deform
    DeformArgs da;
    auto* deform_cmd = app.add_subcommand(
        "deform", "f-deformed and q-deformed oscillators on a truncated Fock space: spectra and commutator tables");
    deform_cmd->add_option("--dim", da.dim, "Truncation dimension D")->check(CLI::Range(2, 4096));
    deform_cmd->add_option("--hbar", da.hbar, "Deformation parameter (q = e^hbar)")->check(CLI::PositiveNumber);
    deform_cmd->add_option("--mode", da.mode, "q (one mode) | symmetric | broken (two modes)")
        ->check(CLI::IsMember({"q", "symmetric", "broken"}));
    deform_cmd->add_option("--profile", da.profile, "q | identity deformation profile")
        ->check(CLI::IsMember({"q", "identity"}));

    // coulomb
    CoulombArgs ca;
    auto* coulomb = app.add_subcommand(
        "coulomb", "Bound Coulomb spectrum in 2-D or 3-D from oscillators in parabolic coordinates");
    coulomb->add_option("--dim", ca.dim, "Space dimension")->check(CLI::IsMember({2, 3}));
    coulomb->add_option("--k", ca.k, "Coupling constant")->check(CLI::PositiveNumber);
    coulomb->add_option("--m", ca.m, "Mass")->check(CLI::PositiveNumber);
    coulomb->add_option("--levels", ca.levels, "Number of levels")->check(CLI::Range(1, 100000));

    // factorize
    FactorizeArgs za;
    auto* factorize_cmd = app.add_subcommand(
        "factorize", "Alternative Hamiltonian descriptions A = Lambda H of a linear vector field");
    factorize_cmd->add_option("--a", za.a, "Real matrix JSON for A")->required()->check(CLI::ExistingFile);
    factorize_cmd->add_option("--tol", za.tol, "Residual tolerance")->check(CLI::PositiveNumber);

    // dof
    DofArgs dfa;
    auto* dof = app.add_subcommand(
        "dof", "Cantor pairing of oscillator labels, commuting split operators n1, n2 and the total Hamiltonian");
    auto* modes = dof->add_option_group("mode");
    modes->add_option("--pair", dfa.pair, "n1 n2 -> n")->expected(2)->check(CLI::NonNegativeNumber);
    modes->add_option("--unpair", dfa.unpair, "n -> n1,n2")->check(CLI::NonNegativeNumber);
    modes->add_option("--table", dfa.table, "CSV of n, n1, n2 for n <= N")->check(CLI::NonNegativeNumber);
    modes->add_option("--split", dfa.split, "CSV of the split operators for dimension D")
        ->check(CLI::Range(1LL, 10000000LL));
    modes->require_option(1);
    dof->add_option("--hbar", dfa.hbar, "hbar for --split");
    dof->add_option("--omega", dfa.omega, "omega for --split");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string text;
        int code = 0;
        if (*brackets) {
            text = run_brackets(ba, g);
        } else if (*spectrum) {
            bool converged = true;
            text = run_spectrum(sa, g, converged);
            if (!converged) {
                err << "spectrum: some searches did not converge; partial result written\n";
                code = 1;
            }
        } else if (*independence) {
            text = run_independence(ia, g);
        } else if (*kepler) {
            text = run_kepler(kepler_state, g);
        } else if (*flow) {
            text = run_flow(fa, g);
        } else if (*deform_cmd) {
            text = run_deform(da, g);
        } else if (*coulomb) {
            text = run_coulomb(ca, g);
        } else if (*factorize_cmd) {
            text = run_factorize(za, g);
        } else if (*dof) {
            text = run_dof(dfa, g, err);
        }
        emit(text, g, out);
        return code;
    } catch (const io::NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace geoqm::cli
