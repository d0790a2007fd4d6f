#include "toda/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "toda/errors.hpp"
#include "toda/flow.hpp"
#include "toda/jacobi.hpp"
#include "toda/serialization.hpp"
#include "toda/tnn.hpp"
#include "toda/verify.hpp"

namespace toda::cli {

namespace {

struct SimulateArgs {
    std::string matrix;
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 0.1;
    std::string method = "tau";
    double rk4_dt = 1e-3;
    std::string out;
    std::string format;
};

struct CheckArgs {
    std::string matrix;
    std::string mode = "exhaustive";
};

struct ReconstructArgs {
    std::string spectrum;
    std::string point;
};

struct VerifyArgs {
    int n = 4;
    int samples = 1000;
    int pattern_samples = 0;
    std::uint64_t seed = 42;
    std::string direction = "both";
    double tol = 1e-9;
    double lambda_min = 0.1;
    double lambda_max = 10.0;
    double log_f_max = 3.0;
    std::string out;
};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

LaxMatrix read_lax(const std::string& path) {
    const Json j = read_json_file(path);
    if (j.is_object() && j.contains("matrix")) return LaxMatrix::from_dense(matrix_from_json(j));
    return lax_from_json(j);
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    std::string format = a.format;
    if (format.empty()) format = ends_with(a.out, ".json") ? "json" : "csv";

    Trajectory traj;
    try {
        const LaxMatrix l0 = read_lax(a.matrix);
        traj = trajectory(l0, a.t0, a.t1, a.dt, parse_method(a.method), TrajectoryOptions{a.rk4_dt});
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) {
            err << "error: cannot write '" << a.out << "'\n";
            return kExitInputError;
        }
    }
    std::ostream& sink = a.out.empty() ? out : file;
    if (format == "json")
        sink << to_json(traj).dump(2) << '\n';
    else
        write_trajectory_csv(sink, traj);

    if (traj.blowup) {
        err << "blowup at t=" << *traj.blowup << "; trajectory truncated after " << traj.states.size() << " samples\n";
        return kExitBlowup;
    }
    return kExitOk;
}

int cmd_check_tnn(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    TnnReport report;
    try {
        const Matrix m = matrix_from_json(read_json_file(a.matrix));
        if (a.mode == "exhaustive")
            report = is_tnn_exhaustive(m);
        else if (a.mode == "tridiagonal")
            report = is_tnn_tridiagonal(m);
        else
            report = is_tnn_interlacing(LaxMatrix::from_dense(m));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    out << to_json(report).dump(2) << '\n';
    return report.is_tnn ? kExitOk : kExitNegative;
}

int cmd_linearize(const std::string& matrix, std::ostream& out, std::ostream& err) {
    LaxMatrix l({0.0, 0.0}, {1.0});
    try {
        l = read_lax(matrix);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    try {
        const Spectrum spec = spectrum(l);
        const JacobiPoint f = abel_jacobi(l, spec);
        const TauSequence tau = tau_sequence(spec, f);
        const SignDiagnosis d = sign_component(f);
        bool general = true;
        for (std::size_t k = 1; k < spec.size(); ++k) general = general && tau.generality[k] > kGeneralityThreshold;
        Json j{{"f", f.f()},
               {"sign_component", d.component.to_string()},
               {"sign_alternating", d.in_positive_cone},
               {"spectrum_positive", spec.positive()},
               {"in_positive_cone", d.in_positive_cone && spec.positive()},
               {"spectrum", spec.values()},
               {"tau", tau.tau},
               {"tau_prime", tau.tau_prime},
               {"is_general", general}};
        out << j.dump(2) << '\n';
        return kExitOk;
    } catch (const ZeroCofactorValue& e) {
        err << "error: ZeroCofactorValue at eigenvalue " << e.eigen_index() << ": " << e.what() << '\n';
        return kExitNegative;
    } catch (const NonRealSpectrum& e) {
        err << "error: NonRealSpectrum: " << e.what() << '\n';
        return kExitNegative;
    } catch (const NonSimpleSpectrum& e) {
        err << "error: NonSimpleSpectrum: " << e.what() << '\n';
        return kExitNegative;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out, std::ostream& err) {
    try {
        const Spectrum spec = spectrum_from_json(read_json_file(a.spectrum));
        const JacobiPoint f = point_from_json(read_json_file(a.point));
        try {
            out << to_json(reconstruct(spec, f)).dump() << '\n';
            return kExitOk;
        } catch (const NonGeneralDivisor& e) {
            err << "error: NonGeneralDivisor index=" << e.index() << ": " << e.what() << '\n';
            return kExitNegative;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    VerificationReport report;
    try {
        VerifyConfig config;
        config.n = a.n;
        config.samples = a.samples;
        config.pattern_samples = a.pattern_samples;
        config.seed = a.seed;
        config.direction = parse_direction(a.direction);
        config.tolerance = a.tol;
        config.ranges.lambda_min = a.lambda_min;
        config.ranges.lambda_max = a.lambda_max;
        config.ranges.log_f_max = a.log_f_max;
        report = verify_theorem(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    const std::string text = to_json(report).dump(2);
    if (a.out.empty()) {
        out << text << '\n';
    } else {
        std::ofstream file(a.out);
        if (!file) {
            err << "error: cannot write '" << a.out << "'\n";
            return kExitInputError;
        }
        file << text << '\n';
    }
    return report.failures == 0 ? kExitOk : kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite Toda lattice: simulation, linearization and total-nonnegativity checks"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Integrate the Toda flow and write a trajectory");
    simulate->add_option("matrix,--matrix", sim.matrix, "Lax matrix JSON file")->required();
    simulate->add_option("t0,--t0", sim.t0, "Start time (state of the matrix file)");
    simulate->add_option("t1,--t1", sim.t1, "End time");
    simulate->add_option("dt,--dt", sim.dt, "Output sampling interval")->check(CLI::PositiveNumber);
    simulate->add_option("method,--method", sim.method, "Solver")->check(CLI::IsMember({"tau", "symes", "rk4"}));
    simulate->add_option("--rk4-dt", sim.rk4_dt, "RK4 step size")->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim.out, "Output file (.csv or .json); stdout when omitted");
    simulate->add_option("--format", sim.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    CheckArgs chk;
    auto* check = app.add_subcommand("check-tnn", "Decide total nonnegativity of a matrix");
    check->add_option("matrix,--matrix", chk.matrix, "Matrix JSON file")->required();
    check->add_option("--mode", chk.mode, "Criterion")
        ->check(CLI::IsMember({"exhaustive", "tridiagonal", "interlacing"}));

    std::string lin_matrix;
    auto* linearize = app.add_subcommand("linearize", "Map a Lax matrix to its Jacobi point");
    linearize->add_option("matrix,--matrix", lin_matrix, "Lax matrix JSON file")->required();

    ReconstructArgs rec;
    auto* recon = app.add_subcommand("reconstruct", "Rebuild the Lax matrix of a spectrum and Jacobi point");
    recon->add_option("spectrum,--spectrum", rec.spectrum, "Spectrum JSON file")->required();
    recon->add_option("point,--point", rec.point, "Jacobi point JSON file")->required();

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify-theorem", "Randomized check of the positive-cone characterization");
    verify->add_option("--n", ver.n, "Matrix size (2..8)");
    verify->add_option("--samples", ver.samples, "Samples per direction");
    verify->add_option("--pattern-samples", ver.pattern_samples, "Samples per non-alternating sign component");
    verify->add_option("--seed", ver.seed, "Master seed");
    verify->add_option("--direction", ver.direction, "forward, converse or both")
        ->check(CLI::IsMember({"forward", "converse", "both"}));
    verify->add_option("--tol", ver.tol, "Tolerance for nonnegative minors");
    verify->add_option("--lambda-min", ver.lambda_min, "Lower end of the eigenvalue range");
    verify->add_option("--lambda-max", ver.lambda_max, "Upper end of the eigenvalue range");
    verify->add_option("--log-f-max", ver.log_f_max, "log|f_i| is drawn from (-value, value)");
    verify->add_option("--out", ver.out, "Write the report to a file instead of stdout");

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
        return kExitInputError;
    }

    if (simulate->parsed()) return cmd_simulate(sim, out, err);
    if (check->parsed()) return cmd_check_tnn(chk, out, err);
    if (linearize->parsed()) return cmd_linearize(lin_matrix, out, err);
    if (recon->parsed()) return cmd_reconstruct(rec, out, err);
    return cmd_verify(ver, out, err);
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace toda::cli
