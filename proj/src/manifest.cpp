#include "spinwalls/manifest.hpp"

#include "spinwalls/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace spinwalls {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys = {
        {"lattice", {"spec"}},
        {"bundle", {"c1", "c2", "p1", "delta"}},
        {"spin", {"C"}},
        {"query", {"r", "bound", "index", "b_plus"}},
        {"surface", {"K2", "pg", "q", "c2"}},
        {"pairs", {"degE", "sigma", "candidates", "tau", "vol"}},
    };
    return keys;
}

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

Manifest Manifest::parse(std::string_view text, std::string source)
{
    Manifest m;
    m.source_ = std::move(source);
    std::istringstream in{std::string(text)};
    std::string raw;
    std::string section;
    int line_no = 0;
    auto where = [&] { return m.source_ + ":" + std::to_string(line_no) + ": "; };

    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError(where() + "malformed section header '" + line + "'");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known_keys().contains(section))
                throw ValidationError(where() + "unknown section [" + section + "]");
            m.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(where() + "expected 'key = value', got '" + line + "'");
        if (section.empty())
            throw ValidationError(where() + "key outside of any [section]");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!known_keys().at(section).contains(key))
            throw ValidationError(where() + "unknown key '" + key + "' in [" + section + "]");
        if (value.empty())
            throw ValidationError(where() + "empty value for '" + key + "'");
        auto [it, inserted] = m.sections_[section].emplace(key, Entry{value, line_no});
        if (!inserted)
            throw ValidationError(where() + "duplicate key '" + key + "' in [" + section + "] (first on line " +
                                  std::to_string(it->second.line) + ")");
    }
    return m;
}

Manifest Manifest::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open manifest '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

bool Manifest::has_section(const std::string& section) const
{
    return sections_.contains(section);
}

bool Manifest::has(const std::string& section, const std::string& key) const
{
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.contains(key);
}

const Manifest::Entry& Manifest::entry(const std::string& section, const std::string& key) const
{
    auto it = sections_.find(section);
    if (it == sections_.end() || !it->second.contains(key))
        throw ValidationError(source_ + ": missing required key '" + key + "' in [" + section + "]");
    return it->second.at(key);
}

void Manifest::fail(const Entry& e, const std::string& what) const
{
    throw ValidationError(source_ + ":" + std::to_string(e.line) + ": " + what);
}

std::string Manifest::get_string(const std::string& section, const std::string& key) const
{
    return entry(section, key).value;
}

std::int64_t Manifest::get_int(const std::string& section, const std::string& key) const
{
    const Entry& e = entry(section, key);
    std::int64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        fail(e, "'" + key + "' must be an integer, got '" + e.value + "'");
    return v;
}

std::optional<std::int64_t> Manifest::find_int(const std::string& section, const std::string& key) const
{
    if (!has(section, key))
        return std::nullopt;
    return get_int(section, key);
}

Rational Manifest::get_rational(const std::string& section, const std::string& key) const
{
    const Entry& e = entry(section, key);
    try {
        return Rational::parse(e.value);
    } catch (const ValidationError& err) {
        fail(e, "'" + key + "' must be a rational p/q: " + err.what());
    }
}

std::optional<Rational> Manifest::find_rational(const std::string& section, const std::string& key) const
{
    if (!has(section, key))
        return std::nullopt;
    return get_rational(section, key);
}

double Manifest::get_double(const std::string& section, const std::string& key) const
{
    const Entry& e = entry(section, key);
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (used != e.value.size())
            fail(e, "'" + key + "' must be a number, got '" + e.value + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(e, "'" + key + "' must be a number, got '" + e.value + "'");
    }
}

LatticeVector Manifest::get_vector(const std::string& section, const std::string& key) const
{
    const Entry& e = entry(section, key);
    std::string s = e.value;
    if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') || (s.front() == '[' && s.back() == ']')))
        s = s.substr(1, s.size() - 2);
    for (char& ch : s)
        if (ch == ',')
            ch = ' ';
    std::istringstream in(s);
    std::vector<std::int64_t> coeffs;
    std::string tok;
    while (in >> tok) {
        std::int64_t v = 0;
        const char* first = tok.data();
        const char* last = first + tok.size();
        if (*first == '+')
            ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
            fail(e, "'" + key + "' has non-integer coefficient '" + tok + "'");
        coeffs.push_back(v);
    }
    if (coeffs.empty())
        fail(e, "'" + key + "' is an empty vector");
    return LatticeVector(std::move(coeffs));
}

std::optional<LatticeVector> Manifest::find_vector(const std::string& section, const std::string& key) const
{
    if (!has(section, key))
        return std::nullopt;
    return get_vector(section, key);
}

IntegerLattice Manifest::lattice() const
{
    const Entry& e = entry("lattice", "spec");
    try {
        return parse_lattice_spec(e.value);
    } catch (const ValidationError& err) {
        fail(e, err.what());
    }
}

} // namespace spinwalls
