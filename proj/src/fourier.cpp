#include "toralg/fourier.hpp"

#include "json_util.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace toralg {

namespace {

/// z^e for a (unimodular) complex base and arbitrary-precision exponent.
std::complex<double> cpow(std::complex<double> z, Int e) {
    bool invert = e < 0;
    if (invert) e = -e;
    std::complex<double> acc{1.0, 0.0};
    while (e > 0) {
        if ((e & 1) != 0) acc *= z;
        z *= z;
        e >>= 1;
    }
    return invert ? std::complex<double>{1.0, 0.0} / acc : acc;
}

}  // namespace

std::complex<double> unit_circle(const Rat& t) {
    double angle = 2.0 * std::numbers::pi * mod1(t).convert_to<double>();
    return std::polar(1.0, angle);
}

TrigPoly TrigPoly::character(Int m, Int n, std::complex<double> coeff) {
    TrigPoly f;
    f.add(m, n, coeff);
    return f;
}

void TrigPoly::add(const Int& m, const Int& n, std::complex<double> coeff) {
    Key key{m, n};
    auto it = coeffs_.find(key);
    std::complex<double> next = coeff + (it == coeffs_.end() ? std::complex<double>{} : it->second);
    if (std::abs(next) < kPruneEps) {
        if (it != coeffs_.end()) coeffs_.erase(it);
        return;
    }
    coeffs_[key] = next;
}

std::complex<double> TrigPoly::at(const Int& m, const Int& n) const {
    auto it = coeffs_.find({m, n});
    return it == coeffs_.end() ? std::complex<double>{} : it->second;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly out = *this;
    for (const auto& [key, c] : o.coeffs_) out.add(key.first, key.second, c);
    return out;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    TrigPoly out;
    for (const auto& [k1, c1] : coeffs_)
        for (const auto& [k2, c2] : o.coeffs_)
            out.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return out;
}

TrigPoly TrigPoly::scaled(std::complex<double> factor) const {
    TrigPoly out;
    for (const auto& [key, c] : coeffs_) out.add(key.first, key.second, c * factor);
    return out;
}

bool in_algebra(const TrigPoly& f, const QuadraticIrrational& alpha) {
    for (const auto& [key, c] : f.coeffs())
        if (sign_linear(key.first, key.second, alpha) < 0) return false;
    return true;
}

TrigPoly apply_map(const TrigPoly& f, const GLMatrix& A, std::complex<double> c1,
                   std::complex<double> c2) {
    if (!A.unimodular()) throw DomainError("matrix is not in GL(2,Z)");
    TrigPoly out;
    for (const auto& [key, c] : f.coeffs()) {
        const Int& m = key.first;
        const Int& n = key.second;
        Int mm = m * A.a + n * A.c;
        Int nn = m * A.b + n * A.d;
        if (std::abs(out.at(mm, nn)) != 0.0)
            throw std::logic_error("support collision under a unimodular map");
        out.add(mm, nn, c * cpow(c1, m) * cpow(c2, n));
    }
    return out;
}

TrigPoly apply_map(const TrigPoly& f, const GLMatrix& A, const TorusPoint& c) {
    if (!A.unimodular()) throw DomainError("matrix is not in GL(2,Z)");
    TrigPoly out;
    for (const auto& [key, coeff] : f.coeffs()) {
        const Int& m = key.first;
        const Int& n = key.second;
        Int mm = m * A.a + n * A.c;
        Int nn = m * A.b + n * A.d;
        if (std::abs(out.at(mm, nn)) != 0.0)
            throw std::logic_error("support collision under a unimodular map");
        // exact angle arithmetic, one float conversion at the end
        Rat angle = c.t1 * m + c.t2 * n;
        out.add(mm, nn, coeff * unit_circle(angle));
    }
    return out;
}

TrigPoly rotation(const TrigPoly& f, std::complex<double> a, std::complex<double> b) {
    TrigPoly out;
    for (const auto& [key, c] : f.coeffs())
        out.add(key.first, key.second, c * cpow(a, key.first) * cpow(b, key.second));
    return out;
}

TrigPoly rotation(const TrigPoly& f, const TorusPoint& c) {
    TrigPoly out;
    for (const auto& [key, coeff] : f.coeffs()) {
        Rat angle = c.t1 * key.first + c.t2 * key.second;
        out.add(key.first, key.second, coeff * unit_circle(angle));
    }
    return out;
}

TrigPoly cesaro(const TrigPoly& f, const Int& n, const Int& m) {
    if (n < 0 || m < 0) throw DomainError("Cesàro degrees must be nonnegative");
    TrigPoly out;
    for (const auto& [key, c] : f.coeffs()) {
        Int aj = abs(key.first), ak = abs(key.second);
        if (aj > n || ak > m) continue;  // weight 0
        double wj = 1.0 - aj.convert_to<double>() / (n + 1).convert_to<double>();
        double wk = 1.0 - ak.convert_to<double>() / (m + 1).convert_to<double>();
        out.add(key.first, key.second, c * wj * wk);
    }
    return out;
}

SubstitutionResult substitute(const TrigPoly& f, const Int& p, const Int& q) {
    SubstitutionResult out;
    for (const auto& [key, c] : f.coeffs()) {
        Int e = key.first * q + key.second * p;
        auto [it, inserted] = out.exponents.emplace(e, c);
        if (!inserted) {
            out.injective = false;
            it->second += c;
        }
    }
    return out;
}

std::pair<std::complex<double>, std::complex<double>> measure_pair(const TrigPoly& f,
                                                                   const Int& p_k,
                                                                   const Int& q_k) {
    std::complex<double> mu_k{};
    for (const auto& [key, c] : f.coeffs())
        if (key.first * q_k + key.second * p_k == 0) mu_k += c;
    return {mu_k, f.at(0, 0)};
}

// ---------------------------------------------------------------------------
// file format

TrigPoly parse_poly(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    TrigPoly f;
    if (first != std::string_view::npos && (text[first] == '[' || text[first] == '{')) {
        nlohmann::json j = nlohmann::json::parse(text);
        if (!j.is_array()) throw ParseError("polynomial JSON must be an array", first);
        for (const auto& item : j) {
            f.add(int_from_json(item.at("m")), int_from_json(item.at("n")),
                  {item.at("re").get<double>(), item.at("im").get<double>()});
        }
        return f;
    }
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        std::string ms, ns;
        double re, im;
        if (!(row >> ms)) continue;  // blank line
        if (!(row >> ns >> re >> im))
            throw ParseError("expected 'm n re im' on line " + std::to_string(lineno), 0);
        f.add(Int(ms), Int(ns), {re, im});
    }
    return f;
}

std::string render_poly(const TrigPoly& f, bool json) {
    if (json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [key, c] : f.coeffs()) {
            nlohmann::ordered_json item;
            item["m"] = json_int(key.first);
            item["n"] = json_int(key.second);
            item["re"] = c.real();
            item["im"] = c.imag();
            arr.push_back(item);
        }
        return arr.dump(2) + "\n";
    }
    std::ostringstream out;
    out.precision(17);
    for (const auto& [key, c] : f.coeffs())
        out << key.first << ' ' << key.second << ' ' << c.real() << ' ' << c.imag() << '\n';
    return out.str();
}

}  // namespace toralg
