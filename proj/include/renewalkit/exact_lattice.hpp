#pragma once

#include "renewalkit/intmatrix.hpp"
#include "renewalkit/symbolic.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace renewalkit::lattice {

struct DegenerateSupport : std::runtime_error {
    explicit DegenerateSupport(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedPresentation : std::runtime_error {
    explicit UnsupportedPresentation(const std::string& what) : std::runtime_error(what) {}
};

using SymVec = std::vector<SymbolicReal>;

// Finitely presented distribution with exact coordinates and masses.
struct LatticeLaw {
    int dim = 0;
    struct Atom {
        SymVec point;
        Rational mass;
    };
    std::vector<Atom> atoms;
    SymbolTable symbols;

    void validate() const;  // masses positive and sum to 1, atoms distinct, full affine hull
};

// Unimodular reduction of a real vector with decidable rational structure:
// z = K*y with z = (0,...,0, z_nu, z_{nu+1},...,z_r), z_nu rational >= 0 and
// the trailing coordinates irrational, positive, rationally independent.
struct NormalizeResult {
    IntMat K;
    SymVec z;
    int nu = 0;  // number of leading rational slots of z (the rest are irrational)
};
NormalizeResult normalize_vector(const SymVec& y, const SymbolTable& table);

// Classification of a Z^nu-supported law: aperiodic iff the support generates
// Z^nu as a group. When aperiodic, produces the constructive witness
// xi = K^{-1}(zeta_1,...,zeta_{nu-1}, p + q*zeta_nu) with zeta strongly aperiodic.
struct AperiodicityReport {
    bool aperiodic = false;
    bool strongly_aperiodic = false;
    IntMat K;  // nu x nu, det +-1 (valid when aperiodic)
    Int p{0}, q{1};
    std::vector<std::vector<Int>> core_support;  // support of zeta
    std::vector<Rational> failing_t;             // nonempty iff not aperiodic
};
AperiodicityReport is_aperiodic(const std::vector<std::vector<Int>>& support);

// Canonical lattice structure of a finitely presented law. Requires all
// pairwise support differences to be rational (the law is presented in the
// aligned frame or on a rational lattice); the common offset may carry
// irrational symbols.
struct LatticeDecomposition {
    int r = 0;
    int nu = 0;
    Int q{1};
    Int p{0};
    SymVec beta;         // r canonical offsets in [0,1)
    IntMat K;            // nu x nu witness for D*L from is_aperiodic (identity when nu=0)
    std::vector<Int> D;  // diag(1,...,1,q)
    RatMat gamma_basis;  // d x r, columns generate the lattice Gamma of Prop-style invariants
    IntMat alignment;    // r x r unimodular from normalize_vector
};
LatticeDecomposition decompose(const LatticeLaw& law);

// JSON presentation: {dim, symbols:{name:value}, atoms:[{point:[...], mass:"p/q"}]}
// where a point entry is "p/q" or {rat:"p/q", irr:{name:"p/q"}}.
LatticeLaw lattice_law_from_json(const std::string& text);
std::string lattice_law_to_json(const LatticeLaw& law);
std::string decomposition_to_json(const LatticeDecomposition& dec, const SymbolTable& symbols);

}  // namespace renewalkit::lattice
