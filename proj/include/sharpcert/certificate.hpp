#pragma once

#include "sharpcert/form_matrix.hpp"
#include "sharpcert/quadext.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sharpcert {

struct SpectrumEntry {
    QuadExt value;
    int multiplicity = 0;

    bool operator==(const SpectrumEntry& o) const {
        return value == o.value && multiplicity == o.multiplicity;
    }
};

/// Self-contained sharpness record for one dimension p: the constant
/// phi_p, the minor chain D_1..D_p at phi_p, the kernel vector
/// (1, t, ..., t), its residual, the exact spectrum of Q_p(phi_p), and the
/// ratio the kernel vector attains. Everything is exact; a verifier
/// recomputes all of it from the dimension alone.
struct Certificate {
    int dimension = 0;
    QuadExt sharp_constant;
    std::vector<QuadExt> minor_values;  // index k-1 holds D_k(phi_p)
    std::vector<QuadExt> kernel;
    QuadExt kernel_residual_max;
    std::vector<SpectrumEntry> spectrum;  // ascending, multiplicities merged
    QuadExt equality_ratio;

    bool operator==(const Certificate& o) const = default;
};

struct VerifyResult {
    bool ok = false;
    std::string failed_identity;  // empty when ok
};

class CertificateParseError : public std::runtime_error {
public:
    explicit CertificateParseError(const std::string& what) : std::runtime_error(what) {}
};

/// phi_p = (1 + sqrt(p))/2, exact, perfect squares folded to rationals.
QuadExt sharp_constant(int p);

/// The extremal vector (1, t, ..., t) with t = 1/(1 + sqrt(p)); p >= 2.
ExactVector<QuadExt> kernel_vector(int p);

/// Spectrum of Q_p(C) in closed form: C with multiplicity p - 2 plus the
/// two roots (2C - 1 +- sqrt(p))/2 of the arrowhead block; sorted
/// ascending with equal values merged. Requires p >= 2.
std::vector<SpectrumEntry> spectrum_closed_form(int p, const QuadExt& C);

/// Builds the full certificate for p >= 2 and cross-checks every identity;
/// throws std::logic_error naming the first violated identity (which would
/// indicate an implementation bug, never an expected outcome).
Certificate build_certificate(int p);

/// Recomputes every field from the certificate's dimension and claimed
/// constant, exactly, and reports the first identity that fails. Trusts
/// nothing stored in the certificate.
VerifyResult verify_certificate(const Certificate& cert);

/// Fixed-order "field = value" text with a "sharpcert-v1" header line.
std::string render_certificate(const Certificate& cert);

/// Strict inverse of render_certificate; throws CertificateParseError.
Certificate parse_certificate(const std::string& text);

}  // namespace sharpcert
