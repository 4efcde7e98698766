// sharpcert: certify, verify and stress-test the sharp constant
// (1+sqrt(p))/2 of the inequality ||x||_1 * ||x||_inf <= C * ||x||_2^2.

#include "sharpcert/certificate.hpp"
#include "sharpcert/minors.hpp"
#include "sharpcert/oracle.hpp"
#include "sharpcert/scalar_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sharpcert;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

/// Accepts "3/2", "-7", "1.5"; decimal literals become exact fractions
/// over a power of ten, so the exact path stays exact.
Rational parse_parameter(const std::string& text) {
    if (text.find('/') != std::string::npos || text.find('.') == std::string::npos)
        return parse_rational(text);
    const std::size_t dot = text.find('.');
    const std::string head = text.substr(0, dot);
    const std::string tail = text.substr(dot + 1);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal literal: " + text);
    const bool negative = !head.empty() && head[0] == '-';
    const Rational integer_part = head.empty() || head == "-" || head == "+"
                                      ? Rational(0)
                                      : parse_rational(head).abs();
    BigInt scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i)
        scale *= 10;
    const Rational value = integer_part + Rational(detail::parse_integer(tail, false), scale);
    return negative ? -value : value;
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(token, &used));
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
                ++used;
            if (used != token.size())
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad vector coordinate: " + token);
        }
    }
    if (values.empty())
        throw std::invalid_argument("empty vector");
    return values;
}

class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Options {
    int p = 0;
    std::string c_text;
    std::string vector_text;
    std::int64_t trials = 10000;
    std::int64_t seed = 0;
    std::int64_t resolution = 100001;
    double tolerance = -1.0;  // negative: use the 1e-12 * p default
    std::string out_path;
    std::string format = "text";
    std::string cert_path;
    std::string dump_path;
};

QuadExt parameter_or_phi(const Options& opt) {
    if (opt.c_text.empty())
        return sharp_constant(opt.p);
    return QuadExt(parse_parameter(opt.c_text));
}

int run_certify(const Options& opt) {
    OutputSink sink(opt.out_path);
    if (opt.p == 1) {
        sink.stream() << "p=1: equality for all x; constant 1\n";
        return kExitOk;
    }
    const Certificate cert = build_certificate(opt.p);
    sink.stream() << render_certificate(cert);
    return kExitOk;
}

int run_verify(const Options& opt) {
    std::ifstream in(opt.cert_path);
    if (!in) {
        std::cerr << "cannot read certificate file: " << opt.cert_path << "\n";
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    Certificate cert;
    try {
        cert = parse_certificate(buffer.str());
    } catch (const CertificateParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    }

    const VerifyResult result = verify_certificate(cert);
    OutputSink sink(opt.out_path);
    if (opt.format == "machine") {
        sink.stream() << "verified = " << (result.ok ? "true" : "false") << "\n";
        if (!result.ok)
            sink.stream() << "failed_identity = " << result.failed_identity << "\n";
    } else if (result.ok) {
        sink.stream() << "certificate verified: p=" << cert.dimension << "\n";
    } else {
        sink.stream() << "verification failed: " << result.failed_identity << "\n";
    }
    return result.ok ? kExitOk : kExitCheckFailed;
}

int run_minors(const Options& opt) {
    const QuadExt C = parameter_or_phi(opt);
    OutputSink sink(opt.out_path);
    std::ostream& os = sink.stream();
    if (opt.format == "machine") {
        os << "p = " << opt.p << "\n";
        os << "c = " << C.to_string() << "\n";
        for (int k = 1; k <= opt.p; ++k)
            os << "minor_" << k << " = " << minor_closed_form(k, C).to_string() << "\n";
        os << "polynomial = " << minor_polynomial(opt.p).to_string() << "\n";
        os << "positive_definite = "
           << (sylvester_positive_definite(opt.p, C) ? "true" : "false") << "\n";
    } else {
        os << "leading principal minors of Q_" << opt.p << "(C) at C = " << C << "\n";
        for (int k = 1; k <= opt.p; ++k)
            os << "  D_" << k << " = " << minor_closed_form(k, C) << "\n";
        os << "D_" << opt.p << " as a polynomial in C: " << minor_polynomial(opt.p).to_string()
           << "\n";
        os << "positive definite (Sylvester): "
           << (sylvester_positive_definite(opt.p, C) ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int run_eigen(const Options& opt) {
    const QuadExt C = parameter_or_phi(opt);
    std::vector<SpectrumEntry> exact;
    if (opt.p == 1)
        exact.push_back({C - QuadExt(1), 1});
    else
        exact = spectrum_closed_form(opt.p, C);
    const std::vector<double> numeric = numeric_eigenvalues(opt.p, C.to_double());

    double max_dev = 0.0;
    std::size_t i = 0;
    for (const SpectrumEntry& e : exact) {
        const double value = e.value.to_double();
        for (int m = 0; m < e.multiplicity && i < numeric.size(); ++m, ++i)
            max_dev = std::max(max_dev, std::fabs(numeric[i] - value));
    }

    OutputSink sink(opt.out_path);
    std::ostream& os = sink.stream();
    if (opt.format == "machine") {
        os << "p = " << opt.p << "\n";
        os << "c = " << C.to_string() << "\n";
        for (std::size_t j = 0; j < exact.size(); ++j)
            os << "exact_" << j + 1 << " = " << exact[j].value.to_string() << " x "
               << exact[j].multiplicity << "\n";
        for (std::size_t j = 0; j < numeric.size(); ++j)
            os << "numeric_" << j + 1 << " = " << format_double(numeric[j]) << "\n";
        os << "max_deviation = " << format_double(max_dev) << "\n";
    } else {
        os << "spectrum of Q_" << opt.p << "(C) at C = " << C << "\n";
        os << "  exact: ";
        for (std::size_t j = 0; j < exact.size(); ++j) {
            if (j > 0)
                os << ", ";
            os << exact[j].value << " x " << exact[j].multiplicity;
        }
        os << "\n  numeric:";
        for (double v : numeric)
            os << " " << format_double(v);
        os << "\n  max deviation: " << format_double(max_dev) << "\n";
    }
    return kExitOk;
}

int run_check(const Options& opt) {
    std::vector<double> x;
    try {
        x = parse_vector(opt.vector_text);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    double ratio = 0.0;
    try {
        ratio = evaluate_ratio(x);
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    const int p = static_cast<int>(x.size());
    const double bound = sharp_constant(p).to_double();
    const double tolerance = opt.tolerance >= 0.0 ? opt.tolerance : 1e-12 * p;
    const bool ok = ratio <= bound + tolerance;

    OutputSink sink(opt.out_path);
    std::ostream& os = sink.stream();
    if (opt.format == "machine") {
        os << "p = " << p << "\n";
        os << "ratio = " << format_double(ratio) << "\n";
        os << "bound = " << format_double(bound) << "\n";
        os << "gap = " << format_double(bound - ratio) << "\n";
        os << "holds = " << (ok ? "true" : "false") << "\n";
    } else {
        os << "ratio ||x||_1 * ||x||_inf / ||x||_2^2 = " << format_double(ratio) << "\n";
        os << "bound (1+sqrt(" << p << "))/2 = " << format_double(bound) << "\n";
        os << "gap = " << format_double(bound - ratio) << "\n";
        os << (ok ? "inequality holds\n" : "inequality VIOLATED\n");
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int run_search(const Options& opt) {
    const SearchReport report = random_search(opt.p, opt.trials,
                                              static_cast<std::uint64_t>(opt.seed));

    if (!opt.dump_path.empty()) {
        std::ofstream dump(opt.dump_path);
        if (!dump)
            throw std::invalid_argument("cannot open dump file: " + opt.dump_path);
        for (std::int64_t trial = 0; trial < opt.trials; ++trial) {
            const std::vector<double> sample =
                raw_search_sample(opt.p, trial, static_cast<std::uint64_t>(opt.seed));
            for (std::size_t i = 0; i < sample.size(); ++i)
                dump << (i > 0 ? " " : "") << format_double(sample[i]);
            dump << "\n";
        }
    }

    OutputSink sink(opt.out_path);
    std::ostream& os = sink.stream();
    if (opt.format == "machine") {
        os << render_search_report(report);
    } else {
        os << "search p=" << report.dimension << " trials=" << report.trials
           << " seed=" << report.seed << "\n";
        os << "  best ratio:  " << format_double(report.best_ratio) << "\n";
        os << "  bound phi_p: " << format_double(sharp_constant(opt.p).to_double()) << "\n";
        os << "  gap to phi:  " << format_double(report.gap_to_phi) << "\n";
    }
    return kExitOk;
}

int run_oracle(const Options& opt) {
    const GridResult grid = grid_oracle(opt.p, opt.resolution);
    const double phi = sharp_constant(opt.p).to_double();
    const double t_star = 1.0 / (1.0 + std::sqrt(static_cast<double>(opt.p)));

    OutputSink sink(opt.out_path);
    std::ostream& os = sink.stream();
    if (opt.format == "machine") {
        os << "p = " << opt.p << "\n";
        os << "resolution = " << opt.resolution << "\n";
        os << "grid_max = " << format_double(grid.value) << "\n";
        os << "argmax = " << format_double(grid.argmax) << "\n";
        os << "phi = " << format_double(phi) << "\n";
        os << "gap = " << format_double(phi - grid.value) << "\n";
    } else {
        os << "grid maximum of (1+(p-1)t)/(1+(p-1)t^2) on [0,1], p=" << opt.p << "\n";
        os << "  max " << format_double(grid.value) << " at t = " << format_double(grid.argmax)
           << "\n";
        os << "  phi_p = " << format_double(phi) << " at t* = " << format_double(t_star) << "\n";
        os << "  gap = " << format_double(phi - grid.value) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certification and falsification tool for the sharp l1*linf <= C*l2^2 bound"};
    app.require_subcommand(1);

    Options opt;

    auto add_output = [&opt](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "write output to this file instead of stdout");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "machine"}));
    };
    auto add_common = [&opt, &add_output](CLI::App* cmd) {
        cmd->add_option("--p", opt.p, "dimension p")->required();
        add_output(cmd);
    };

    CLI::App* certify = app.add_subcommand("certify", "build a sharpness certificate");
    add_common(certify);

    CLI::App* verify = app.add_subcommand("verify", "verify a certificate file");
    verify->add_option("path", opt.cert_path, "certificate file")->required();
    add_output(verify);

    CLI::App* minors = app.add_subcommand("minors", "leading principal minor table");
    add_common(minors);
    minors->add_option("--c", opt.c_text, "form parameter C (rational or decimal; default phi_p)");

    CLI::App* eigen = app.add_subcommand("eigen", "exact and numeric spectrum of Q_p(C)");
    add_common(eigen);
    eigen->add_option("--c", opt.c_text, "form parameter C (rational or decimal; default phi_p)");

    CLI::App* check = app.add_subcommand("check", "check the inequality on one vector");
    check->add_option("--vector", opt.vector_text, "comma-separated coordinates")->required();
    check->add_option("--tolerance", opt.tolerance, "comparison tolerance (default 1e-12*p)")
        ->check(CLI::NonNegativeNumber);
    add_output(check);

    CLI::App* search = app.add_subcommand("search", "randomized falsification search");
    add_common(search);
    search->add_option("--trials", opt.trials, "number of trials")->check(CLI::PositiveNumber);
    search->add_option("--seed", opt.seed, "RNG seed");
    search->add_option("--dump-samples", opt.dump_path,
                       "write the raw per-trial samples to this file");

    CLI::App* oracle = app.add_subcommand("oracle", "grid maximization over (1,t,...,t)");
    add_common(oracle);
    oracle->add_option("--resolution", opt.resolution, "grid resolution")
        ->check(CLI::Range(static_cast<std::int64_t>(2), static_cast<std::int64_t>(1) << 40));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (certify->parsed() || minors->parsed() || eigen->parsed() || search->parsed() ||
            oracle->parsed()) {
            const int min_p = certify->parsed() ? 1 : (minors->parsed() || eigen->parsed()) ? 1
                              : oracle->parsed() ? 2
                                                 : 1;
            if (opt.p < min_p) {
                std::cerr << "p must be >= " << min_p << "\n";
                return kExitUsage;
            }
        }
        if (certify->parsed())
            return run_certify(opt);
        if (verify->parsed())
            return run_verify(opt);
        if (minors->parsed())
            return run_minors(opt);
        if (eigen->parsed())
            return run_eigen(opt);
        if (check->parsed())
            return run_check(opt);
        if (search->parsed())
            return run_search(opt);
        if (oracle->parsed())
            return run_oracle(opt);
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        // identity violations from the exact layer: a library bug, not bad input
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}
