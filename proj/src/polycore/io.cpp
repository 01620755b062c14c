#include "nevlab/polycore/io.hpp"

#include <sstream>

namespace nevlab::poly {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[')
            ++depth;
        if (c == ']')
            --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty())
        out.push_back(trim(cur));
    return out;
}

int to_int(const std::string& s, const char* what)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(ErrorKind::Schema, std::string("bad ") + what + ": '" + s + "'");
    }
}

// Splits "re+im*i" into its two parts. Signs right after an exponent marker belong
// to the number.
std::pair<std::string, std::string> split_complex(const std::string& s)
{
    const std::string t = trim(s);
    if (t.size() < 2 || t.substr(t.size() - 2) != "*i")
        return {t, "0"};
    const std::string body = t.substr(0, t.size() - 2);
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            std::string im = body.substr(k);
            if (im[0] == '+')
                im.erase(0, 1);
            return {trim(body.substr(0, k)), trim(im)};
        }
    }
    return {"0", body};
}

template <class S, class Coef>
HomogeneousPolynomial<S> parse_text(const std::string& text, Coef&& coef)
{
    const auto parts = split(text, ';');
    if (parts.size() < 2)
        fail(ErrorKind::Schema, "polynomial text needs 'num_vars; degree; terms...'");
    const int nvars = to_int(parts[0], "num_vars");
    const int degree = to_int(parts[1], "degree");
    Polynomial<S> p(nvars);
    for (std::size_t k = 2; k < parts.size(); ++k) {
        const auto& term = parts[k];
        const auto open = term.find('[');
        const auto close = term.find(']');
        const auto colon = term.find(':', close == std::string::npos ? 0 : close);
        if (open == std::string::npos || close == std::string::npos || colon == std::string::npos)
            fail(ErrorKind::Schema, "bad term '" + term + "'");
        Exponent e;
        for (const auto& x : split(term.substr(open + 1, close - open - 1), ','))
            e.push_back(to_int(x, "exponent"));
        if (static_cast<int>(e.size()) != nvars)
            fail(ErrorKind::DimensionMismatch, "term '" + term + "' has the wrong number of exponents");
        const auto [re, im] = split_complex(term.substr(colon + 1));
        p.add_term(e, coef(re, im));
    }
    return HomogeneousPolynomial<S>(std::move(p), degree);
}

// Decimal strings go through strtod (correctly rounded); "p/q" through exact rationals.
double parse_double(const std::string& s)
{
    if (s.find('/') != std::string::npos)
        return GaussianRational::parse(s, "0").re().get_d();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Schema, "malformed number '" + s + "'");
}

std::string exponent_text(const Exponent& e)
{
    std::string s = "[";
    for (std::size_t i = 0; i < e.size(); ++i)
        s += (i ? "," : "") + std::to_string(e[i]);
    return s + "]";
}

std::string signed_im(const std::string& im) { return im[0] == '-' ? im : "+" + im; }

double number_field(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key))
        return 0.0;
    const auto& v = j.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
        return parse_double(v.get<std::string>());
    fail(ErrorKind::Schema, std::string("coefficient field '") + key + "' must be a number or string");
}

std::string rational_field(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key))
        return "0";
    const auto& v = j.at(key);
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number())
        return GaussianRational::from_complex({v.get<double>(), 0.0}).re().get_str();
    fail(ErrorKind::Schema, std::string("coefficient field '") + key + "' must be a number or string");
}

template <class S, class Coef>
HomogeneousPolynomial<S> parse_json(const nlohmann::json& j, Coef&& coef)
{
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        fail(ErrorKind::Schema, "polynomial JSON needs 'vars' and 'terms'");
    const int nvars = j.at("vars").get<int>();
    Polynomial<S> p(nvars);
    for (const auto& t : j.at("terms")) {
        const Exponent e = t.at("exp").get<Exponent>();
        if (static_cast<int>(e.size()) != nvars)
            fail(ErrorKind::DimensionMismatch, "term exponent length differs from 'vars'");
        p.add_term(e, coef(t));
    }
    const int degree = j.contains("degree") ? j.at("degree").get<int>() : -1;
    return HomogeneousPolynomial<S>(std::move(p), degree);
}

} // namespace

std::string to_text(const FloatForm& p)
{
    std::ostringstream os;
    os.precision(17);
    os << p.nvars() << "; " << p.degree();
    for (const auto& [e, c] : p.terms()) {
        std::ostringstream im;
        im.precision(17);
        im << c.imag();
        os << "; " << exponent_text(e) << ":" << c.real() << signed_im(im.str()) << "*i";
    }
    return os.str();
}

std::string to_text(const ExactForm& p)
{
    std::string s = std::to_string(p.nvars()) + "; " + std::to_string(p.degree());
    for (const auto& [e, c] : p.terms())
        s += "; " + exponent_text(e) + ":" + c.re().get_str() + signed_im(c.im().get_str()) + "*i";
    return s;
}

FloatForm parse_float_form(const std::string& text)
{
    return parse_text<Complex>(text, [](const std::string& re, const std::string& im) {
        return Complex{parse_double(re), parse_double(im)};
    });
}

ExactForm parse_exact_form(const std::string& text)
{
    return parse_text<GaussianRational>(
        text, [](const std::string& re, const std::string& im) { return GaussianRational::parse(re, im); });
}

nlohmann::json to_json(const FloatForm& p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
    return {{"vars", p.nvars()}, {"degree", p.degree()}, {"terms", terms}};
}

nlohmann::json to_json(const ExactForm& p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exp", e}, {"re", c.re().get_str()}, {"im", c.im().get_str()}});
    return {{"vars", p.nvars()}, {"degree", p.degree()}, {"terms", terms}};
}

FloatForm float_form_from_json(const nlohmann::json& j)
{
    return parse_json<Complex>(j, [](const nlohmann::json& t) {
        return Complex{number_field(t, "re"), number_field(t, "im")};
    });
}

ExactForm exact_form_from_json(const nlohmann::json& j)
{
    return parse_json<GaussianRational>(j, [](const nlohmann::json& t) {
        return GaussianRational::parse(rational_field(t, "re"), rational_field(t, "im"));
    });
}

} // namespace nevlab::poly
