#pragma once

#include "disjlab/lp.hpp"
#include "disjlab/rational.hpp"
#include "disjlab/rectangles.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace disjlab {

/// Rectangles a certificate must respect. exclude_disjoint drops every
/// rectangle that contains a disjoint pair (the -infinity weights on T_0).
struct CertificateFamily {
    std::optional<int> witness_k;
    bool exclude_disjoint = false;

    std::string str() const;
    friend bool operator==(const CertificateFamily&, const CertificateFamily&) = default;
};

enum class CertificateKind { Search, SmoothNdisj, FromLp, Custom };

std::string_view to_string(CertificateKind k);

/// A feasible point of the dual LP, if verification passes:
///   maximize phi_coefficient * sum(phi) + psi_coefficient * sum(psi)
///   subject to sum over R of (phi + psi) <= 1 for every R in the family.
struct DualCertificate {
    CertificateKind kind = CertificateKind::Custom;
    int universe = 0;
    int n = 0;
    int k = 0;
    int m = 0;
    Rational alpha = 0;
    Rational beta = 0;
    Rational sigma = 0;
    Rational epsilon = 0;
    Rational phi_coefficient = 1;
    Rational psi_coefficient = 1;
    CertificateFamily family;
    WeightMatrix<Rational> phi;
    WeightMatrix<Rational> psi;
    bool degenerate = false;
    std::string note;

    Rational value() const;
    WeightMatrix<Rational> combined() const;
    /// phi >= 0 and psi <= 0 everywhere.
    bool signs_ok() const;
};

/// Weights over the universe n + k:
///   phi = 2^(beta n) mu_{k,n+k,m+k},  psi = -2^(beta n) 2^(-alpha k) mu_{2k,n+k,m+k},
///   sigma = 2^(-alpha k + 1).
/// beta*n and alpha*k must be integers so the weights stay exact.
DualCertificate build_paper_dual_certificate(int n, int k, int m, const Rational& alpha, const Rational& beta);

/// phi = 2^(beta n) mu_{1,n,n/4} and psi = -(3/4) 2^(beta n) mu_{2,n,n/4}, over
/// rectangles with a one-coordinate witness that avoid disjoint pairs.
DualCertificate build_smooth_dual_ndisj(int n, const Rational& beta, const Rational& epsilon = 0);

/// Multipliers of an optimal LP solution: phi from the lower rows, psi from the upper rows.
DualCertificate certificate_from_lp(const LPInstance& lp, const LPResult& res);

/// Multiply every weight by s (s > 0).
DualCertificate scale(const DualCertificate& c, const Rational& s);

enum class VerifyMode { Exhaustive, Oracle };

std::string_view to_string(VerifyMode m);

struct VerifyReport {
    VerifyMode mode = VerifyMode::Oracle;
    Rational max_weight = 0;
    Rectangle argmax;
    std::optional<WitnessSet> witness;
    Rational tolerance = 0;
    bool feasible = true;
    std::uint64_t rectangles_examined = 0;
};

struct VerifyOptions {
    Rational tolerance = 0;
    std::uint64_t oracle_cap = kDefaultOracleRowSubsetCap;
    std::uint64_t enumeration_cap = kDefaultRectangleEnumerationCap;
};

VerifyReport verify_dual_certificate(const DualCertificate& c, VerifyMode mode, const VerifyOptions& opt = {});

nlohmann::json to_json(const DualCertificate& c);
DualCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace disjlab
