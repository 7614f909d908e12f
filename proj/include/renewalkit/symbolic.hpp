#pragma once

#include "renewalkit/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace renewalkit {

// Registry of formal irrational symbols. A symbol owns a name and a numeric
// value used only where a real-number decision is unavoidable (signs,
// fractional parts); all algebra on the symbols themselves stays exact.
class SymbolTable {
  public:
    int add(const std::string& name, double value);
    int find(const std::string& name) const;  // -1 if absent
    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }
    double value(int id) const { return values_.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(names_.size()); }

  private:
    std::vector<std::string> names_;
    std::vector<double> values_;
};

// Exact element of the Q-module spanned by 1 and the registered symbols:
//   rational_part + sum_i coeff[i] * symbol_i.
// Zero coefficients are never stored, so equality is decidable field-wise.
class SymbolicReal {
  public:
    SymbolicReal() = default;
    SymbolicReal(Rational r) : rat_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    SymbolicReal(int n) : rat_(n) {}                  // NOLINT(google-explicit-constructor)

    static SymbolicReal symbol(int id, Rational coeff = Rational(1));

    const Rational& rational_part() const { return rat_; }
    const std::map<int, Rational>& irrational_part() const { return irr_; }

    bool is_rational() const { return irr_.empty(); }
    bool is_zero() const { return irr_.empty() && rat_ == 0; }

    SymbolicReal& operator+=(const SymbolicReal& o);
    SymbolicReal& operator-=(const SymbolicReal& o);
    SymbolicReal& operator*=(const Rational& c);

    friend SymbolicReal operator+(SymbolicReal a, const SymbolicReal& b) { return a += b; }
    friend SymbolicReal operator-(SymbolicReal a, const SymbolicReal& b) { return a -= b; }
    friend SymbolicReal operator*(SymbolicReal a, const Rational& c) { return a *= c; }
    friend SymbolicReal operator*(const Rational& c, SymbolicReal a) { return a *= c; }
    friend SymbolicReal operator-(SymbolicReal a) {
        a *= Rational(-1);
        return a;
    }

    bool operator==(const SymbolicReal& o) const { return rat_ == o.rat_ && irr_ == o.irr_; }
    bool operator!=(const SymbolicReal& o) const { return !(*this == o); }

    double evaluate(const SymbolTable& table) const;

    std::string str(const SymbolTable* table = nullptr) const;

  private:
    Rational rat_{0};
    std::map<int, Rational> irr_;
};

}  // namespace renewalkit
