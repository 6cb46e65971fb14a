#include "hirz/ypoly.hpp"

#include "hirz/errors.hpp"

#include <sstream>

namespace hirz {

std::string to_fraction_string(const Rational &q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string &s)
{
    Rational r;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || r.set_str(t, 10) != 0 || r.get_den() == 0)
        throw invalid_spec("BadRational", "cannot parse rational '" + s + "'");
    r.canonicalize();
    return r;
}

YPoly::YPoly(const Rational &c)
{
    if (c != 0) c_.push_back(c);
}

YPoly::YPoly(std::initializer_list<Rational> cs) : c_(cs) { trim(); }
YPoly::YPoly(std::vector<Rational> cs) : c_(std::move(cs)) { trim(); }

void YPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational YPoly::coeff(int k) const
{
    return (k >= 0 && k < int(c_.size())) ? c_[k] : Rational(0);
}

Rational YPoly::eval(const Rational &y) const
{
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * y + *it;
    return r;
}

YPoly &YPoly::operator+=(const YPoly &o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

YPoly &YPoly::operator-=(const YPoly &o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

YPoly &YPoly::add_mul(const YPoly &a, const YPoly &b)
{
    if (a.is_zero() || b.is_zero()) return *this;
    size_t need = a.c_.size() + b.c_.size() - 1;
    if (c_.size() < need) c_.resize(need);
    thread_local Rational t;
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
            mpq_add(c_[i + j].get_mpq_t(), c_[i + j].get_mpq_t(), t.get_mpq_t());
        }
    }
    trim();
    return *this;
}

YPoly &YPoly::operator*=(const Rational &s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto &c : c_) c *= s;
    return *this;
}

YPoly YPoly::operator-() const
{
    YPoly r = *this;
    for (auto &c : r.c_) c = -c;
    return r;
}

YPoly operator*(const YPoly &a, const YPoly &b)
{
    if (a.is_zero() || b.is_zero()) return {};
    if (a.c_.size() == 1) return b * a.c_[0];
    if (b.c_.size() == 1) return a * b.c_[0];
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return YPoly(std::move(r));
}

YPoly YPoly::pow(unsigned k) const
{
    YPoly r(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string YPoly::str() const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        const Rational &c = c_[k];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << "y";
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::vector<std::string> YPoly::fraction_strings() const
{
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto &c : c_) out.push_back(to_fraction_string(c));
    return out;
}

} // namespace hirz
