#pragma once

#include "spinwalls/lattice.hpp"
#include "spinwalls/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinwalls {

/// Line-oriented key = value manifest grouped into [section] blocks.
///
///     # Barlow query
///     [lattice]
///     spec = 1,-1x8
///     [bundle]
///     c1 = -3 1 1 1 1 1 1 1 1
///     p1 = -3
///
/// Known sections and keys are fixed; anything else is rejected with its
/// line number. Numbers are parsed exactly.
class Manifest {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static Manifest parse(std::string_view text, std::string source = "<manifest>");
    static Manifest load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::optional<std::int64_t> find_int(const std::string& section, const std::string& key) const;
    Rational get_rational(const std::string& section, const std::string& key) const;
    std::optional<Rational> find_rational(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    /// Whitespace- or comma-separated integers, optionally in () or [].
    LatticeVector get_vector(const std::string& section, const std::string& key) const;
    std::optional<LatticeVector> find_vector(const std::string& section, const std::string& key) const;

    /// The lattice from [lattice] spec.
    IntegerLattice lattice() const;

    const std::string& source() const { return source_; }

private:
    const Entry& entry(const std::string& section, const std::string& key) const;
    [[noreturn]] void fail(const Entry& e, const std::string& what) const;

    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

} // namespace spinwalls
