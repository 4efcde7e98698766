#include "sharpcert/certificate.hpp"

#include "sharpcert/minors.hpp"
#include "sharpcert/scalar_io.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <utility>

namespace sharpcert {

QuadExt sharp_constant(int p) {
    if (p < 1)
        throw std::domain_error("sharp_constant: p must be >= 1");
    return QuadExt(Rational(1, 2), Rational(1, 2), p);
}

ExactVector<QuadExt> kernel_vector(int p) {
    if (p < 2)
        throw std::domain_error("kernel_vector: p must be >= 2");
    const QuadExt t = QuadExt(1) / (QuadExt(1) + QuadExt::sqrt_of(p));
    ExactVector<QuadExt> u(static_cast<std::size_t>(p), t);
    u[0] = QuadExt(1);
    return u;
}

std::vector<SpectrumEntry> spectrum_closed_form(int p, const QuadExt& C) {
    if (p < 2)
        throw std::domain_error("spectrum_closed_form: p must be >= 2");
    const QuadExt sqrt_p = QuadExt::sqrt_of(p);
    const QuadExt trace_block = QuadExt(2) * C - QuadExt(1);
    const QuadExt half(Rational(1, 2));

    std::vector<SpectrumEntry> entries;
    entries.push_back({(trace_block - sqrt_p) * half, 1});
    entries.push_back({(trace_block + sqrt_p) * half, 1});
    if (p > 2)
        entries.push_back({C, p - 2});

    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.value < y.value; });

    std::vector<SpectrumEntry> merged;
    for (const SpectrumEntry& e : entries) {
        if (!merged.empty() && merged.back().value == e.value)
            merged.back().multiplicity += e.multiplicity;
        else
            merged.push_back(e);
    }
    return merged;
}

namespace {

QuadExt max_abs(const ExactVector<QuadExt>& v) {
    QuadExt best(0);
    for (const QuadExt& x : v) {
        const QuadExt a = x.abs();
        if (a > best)
            best = a;
    }
    return best;
}

QuadExt ratio_at(const ExactVector<QuadExt>& u) {
    QuadExt sum(0);
    QuadExt sum_sq(0);
    for (const QuadExt& ui : u) {
        sum += ui;
        sum_sq += ui * ui;
    }
    if (sum_sq.is_zero())
        throw std::domain_error("ratio_at: zero vector");
    return u.front() * sum / sum_sq;
}

}  // namespace

Certificate build_certificate(int p) {
    if (p < 2)
        throw std::domain_error("build_certificate: p must be >= 2");

    Certificate cert;
    cert.dimension = p;
    cert.sharp_constant = sharp_constant(p);

    cert.minor_values.reserve(static_cast<std::size_t>(p));
    for (int k = 1; k <= p; ++k) {
        const QuadExt via_formula = minor_at_phi(k, p);
        const QuadExt via_closed = minor_closed_form(k, cert.sharp_constant);
        if (via_formula != via_closed)
            throw std::logic_error("build_certificate: minor_at_phi != minor_closed_form at k=" +
                                   std::to_string(k));
        cert.minor_values.push_back(via_formula);
    }

    cert.kernel = kernel_vector(p);
    const auto residual = apply_form(build_form_matrix(p, cert.sharp_constant), cert.kernel);
    cert.kernel_residual_max = max_abs(residual);
    cert.spectrum = spectrum_closed_form(p, cert.sharp_constant);
    cert.equality_ratio = ratio_at(cert.kernel);

    const VerifyResult check = verify_certificate(cert);
    if (!check.ok)
        throw std::logic_error("build_certificate: identity violated: " + check.failed_identity);
    return cert;
}

namespace {

VerifyResult run_verification(const Certificate& cert) {
    const int p = cert.dimension;
    if (p < 2)
        return {false, "dimension < 2"};
    if (cert.minor_values.size() != static_cast<std::size_t>(p))
        return {false, "minor_values size != dimension"};
    if (cert.kernel.size() != static_cast<std::size_t>(p))
        return {false, "kernel size != dimension"};

    const QuadExt& C = cert.sharp_constant;

    // Evidence checks against the claimed constant come first: they are
    // what makes the certificate self-contained.
    std::vector<QuadExt> recomputed_minors;
    recomputed_minors.reserve(static_cast<std::size_t>(p));
    for (int k = 1; k <= p; ++k)
        recomputed_minors.push_back(minor_closed_form(k, C));
    if (!recomputed_minors.back().is_zero())
        return {false, "minor_values[p] != 0"};
    for (int k = 1; k < p; ++k)
        if (recomputed_minors[static_cast<std::size_t>(k) - 1].sign() <= 0)
            return {false, "minor_values[" + std::to_string(k) + "] <= 0"};
    for (int k = 1; k <= p; ++k)
        if (cert.minor_values[static_cast<std::size_t>(k) - 1] !=
            recomputed_minors[static_cast<std::size_t>(k) - 1])
            return {false, "minor_values[" + std::to_string(k) + "] mismatch"};

    if (cert.kernel[0] != QuadExt(1))
        return {false, "kernel u1 != 1"};
    const auto residual = apply_form(build_form_matrix(p, C), cert.kernel);
    const QuadExt residual_max = max_abs(residual);
    if (!residual_max.is_zero())
        return {false, "kernel_residual != 0"};
    if (cert.kernel_residual_max != residual_max)
        return {false, "kernel_residual_max mismatch"};
    const QuadExt half(Rational(1, 2));
    for (int i = 1; i < p; ++i)
        if (!(cert.kernel[static_cast<std::size_t>(i)] < half))
            return {false, "kernel t >= 1/2"};

    const QuadExt ratio = ratio_at(cert.kernel);
    if (ratio != C)
        return {false, "equality_ratio != sharp_constant"};
    if (cert.equality_ratio != ratio)
        return {false, "equality_ratio mismatch"};

    const std::vector<SpectrumEntry> spectrum = spectrum_closed_form(p, C);
    if (cert.spectrum != spectrum)
        return {false, "spectrum mismatch"};
    int total_multiplicity = 0;
    int zero_count = 0;
    for (const SpectrumEntry& e : cert.spectrum) {
        total_multiplicity += e.multiplicity;
        if (e.value.sign() < 0)
            return {false, "spectrum has negative eigenvalue"};
        if (e.value.is_zero())
            zero_count += e.multiplicity;
    }
    if (total_multiplicity != p)
        return {false, "spectrum multiplicities != dimension"};
    if (zero_count != 1)
        return {false, "spectrum zero eigenvalue count != 1"};

    // Finally pin the claimed values to the ones recomputed from the
    // dimension alone.
    if (C != sharp_constant(p))
        return {false, "sharp_constant != (1+sqrt(p))/2"};
    if (cert.kernel != kernel_vector(p))
        return {false, "kernel mismatch"};
    for (int k = 1; k <= p; ++k)
        if (cert.minor_values[static_cast<std::size_t>(k) - 1] != minor_at_phi(k, p))
            return {false, "minor_values[" + std::to_string(k) + "] != minor_at_phi"};

    return {true, ""};
}

}  // namespace

VerifyResult verify_certificate(const Certificate& cert) {
    try {
        return run_verification(cert);
    } catch (const std::domain_error& e) {
        // a crafted certificate can mix radicands; that is a failed
        // verification, not a caller error
        return {false, std::string("arithmetic error: ") + e.what()};
    }
}

namespace {

constexpr const char* kHeader = "sharpcert-v1";

std::string join_quadext(const std::vector<QuadExt>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            s += ", ";
        s += values[i].to_string();
    }
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string expect_field(std::istringstream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line))
        throw CertificateParseError("missing field: " + key);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const std::string prefix = key + " = ";
    if (line.rfind(prefix, 0) != 0)
        throw CertificateParseError("expected field '" + key + "', got: " + line);
    return line.substr(prefix.size());
}

std::vector<QuadExt> parse_quadext_list(const std::string& s, const std::string& key) {
    std::vector<QuadExt> values;
    for (const std::string& token : split(s, ',')) {
        try {
            values.push_back(parse_quadext(token));
        } catch (const std::invalid_argument& e) {
            throw CertificateParseError(key + ": " + e.what());
        }
    }
    return values;
}

int parse_small_int(std::string_view token, const std::string& key) {
    try {
        const BigInt value = sharpcert::detail::parse_integer(sharpcert::detail::trim(token), true);
        if (value < 0 || value > 1000000)
            throw CertificateParseError(key + " out of range");
        return value.convert_to<int>();
    } catch (const std::invalid_argument& e) {
        throw CertificateParseError(key + ": " + e.what());
    }
}

}  // namespace

std::string render_certificate(const Certificate& cert) {
    std::string out = std::string(kHeader) + "\n";
    out += "dimension = " + std::to_string(cert.dimension) + "\n";
    out += "sharp_constant = " + cert.sharp_constant.to_string() + "\n";
    out += "minor_values = " + join_quadext(cert.minor_values) + "\n";
    out += "kernel = " + join_quadext(cert.kernel) + "\n";
    out += "kernel_residual_max = " + cert.kernel_residual_max.to_string() + "\n";
    out += "spectrum = ";
    for (std::size_t i = 0; i < cert.spectrum.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += cert.spectrum[i].value.to_string() + " x " +
               std::to_string(cert.spectrum[i].multiplicity);
    }
    out += "\n";
    out += "equality_ratio = " + cert.equality_ratio.to_string() + "\n";
    return out;
}

Certificate parse_certificate(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw CertificateParseError("empty certificate");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kHeader)
        throw CertificateParseError("bad header, expected " + std::string(kHeader));

    Certificate cert;
    cert.dimension = parse_small_int(expect_field(in, "dimension"), "dimension");

    try {
        cert.sharp_constant = parse_quadext(expect_field(in, "sharp_constant"));
        cert.minor_values = parse_quadext_list(expect_field(in, "minor_values"), "minor_values");
        cert.kernel = parse_quadext_list(expect_field(in, "kernel"), "kernel");
        cert.kernel_residual_max = parse_quadext(expect_field(in, "kernel_residual_max"));
        const std::string spectrum_text = expect_field(in, "spectrum");
        for (const std::string& token : split(spectrum_text, ',')) {
            const std::size_t sep = token.rfind(" x ");
            if (sep == std::string::npos)
                throw CertificateParseError("spectrum entry missing multiplicity: " + token);
            SpectrumEntry entry;
            entry.value = parse_quadext(token.substr(0, sep));
            entry.multiplicity = parse_small_int(token.substr(sep + 3), "spectrum multiplicity");
            cert.spectrum.push_back(entry);
        }
        cert.equality_ratio = parse_quadext(expect_field(in, "equality_ratio"));
    } catch (const CertificateParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw CertificateParseError(e.what());
    }

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty())
            throw CertificateParseError("trailing content: " + line);
    }
    return cert;
}

}  // namespace sharpcert
