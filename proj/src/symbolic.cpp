#include "renewalkit/symbolic.hpp"

#include <sstream>

namespace renewalkit {

int SymbolTable::add(const std::string& name, double value) {
    int existing = find(name);
    if (existing >= 0) {
        if (values_[static_cast<size_t>(existing)] != value)
            throw std::invalid_argument("SymbolTable: symbol '" + name + "' re-registered with a different value");
        return existing;
    }
    names_.push_back(name);
    values_.push_back(value);
    return static_cast<int>(names_.size()) - 1;
}

int SymbolTable::find(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

SymbolicReal SymbolicReal::symbol(int id, Rational coeff) {
    SymbolicReal s;
    if (coeff != 0) s.irr_[id] = std::move(coeff);
    return s;
}

SymbolicReal& SymbolicReal::operator+=(const SymbolicReal& o) {
    rat_ += o.rat_;
    for (const auto& [id, c] : o.irr_) {
        auto it = irr_.find(id);
        if (it == irr_.end()) {
            irr_[id] = c;
        } else {
            it->second += c;
            if (it->second == 0) irr_.erase(it);
        }
    }
    return *this;
}

SymbolicReal& SymbolicReal::operator-=(const SymbolicReal& o) {
    rat_ -= o.rat_;
    for (const auto& [id, c] : o.irr_) {
        auto it = irr_.find(id);
        if (it == irr_.end()) {
            irr_[id] = -c;
        } else {
            it->second -= c;
            if (it->second == 0) irr_.erase(it);
        }
    }
    return *this;
}

SymbolicReal& SymbolicReal::operator*=(const Rational& c) {
    if (c == 0) {
        rat_ = 0;
        irr_.clear();
        return *this;
    }
    rat_ *= c;
    for (auto& [id, v] : irr_) v *= c;
    return *this;
}

double SymbolicReal::evaluate(const SymbolTable& table) const {
    double x = rat_to_double(rat_);
    for (const auto& [id, c] : irr_) x += rat_to_double(c) * table.value(id);
    return x;
}

std::string SymbolicReal::str(const SymbolTable* table) const {
    std::ostringstream os;
    os << to_string(rat_);
    for (const auto& [id, c] : irr_) {
        os << " + (" << to_string(c) << ")*";
        if (table)
            os << table->name(id);
        else
            os << "s" << id;
    }
    return os.str();
}

}  // namespace renewalkit
