#include "coopetition/rational.hpp"

#include <cctype>

#include "coopetition/errors.hpp"

namespace coopetition {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    std::string body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    std::string num = body, den = "1";
    if (auto slash = body.find('/'); slash != std::string::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        fail(Err::ParseError, "not a rational: '" + text + "'");
    }
    Rat r{mpz_class(num), mpz_class(den)};
    if (r.get_den() == 0) fail(Err::ParseError, "zero denominator: '" + text + "'");
    r.canonicalize();
    if (negative) r = -r;
    return r;
}

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const std::vector<Rat>& rs) {
    std::string out = "(";
    for (size_t k = 0; k < rs.size(); ++k) {
        if (k > 0) out += ", ";
        out += to_string(rs[k]);
    }
    return out + ")";
}

}  // namespace coopetition
