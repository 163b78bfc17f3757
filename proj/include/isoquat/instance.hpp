#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "isoquat/gram.hpp"
#include "isoquat/literal.hpp"
#include "isoquat/morita.hpp"

namespace isoquat {

/// Raw key-value view of an instance file, before any literal is parsed.
struct RawEntry {
    std::string value;
    int line = 0;
    int col = 0;
};

struct RawInstance {
    // section -> key -> entry; section and key names are lowercase.
    std::map<std::string, std::map<std::string, RawEntry>> sections;
};

/// Scans the sectioned text format: `[section]` headers, `key = value`
/// entries, `#` comments; a value continues onto following lines while its
/// bracket balance is open. Implemented in src/instance_scan.cpp.
RawInstance scan_instance_text(const std::string& text);

struct Options {
    std::uint64_t seed = 0;
    int height = 2;
    int filtration = 2;
    int samples = 200;
    std::uint64_t max_steps = std::numeric_limits<std::uint64_t>::max();
    bool assume_division = false;
};

template <class B>
struct Instance {
    DescPtr<B> desc;
    std::optional<GramForm<B>> gram;
    std::optional<MoritaVector<B>> vector;
    Options opts;
};

using AnyInstance = std::variant<Instance<Rat>, Instance<F2s>>;

namespace instancedetail {

inline const RawEntry& require(const RawInstance& raw, const std::string& sec, const std::string& key) {
    auto s = raw.sections.find(sec);
    if (s == raw.sections.end()) throw ParseError(1, 1, "missing section [" + sec + "]");
    auto k = s->second.find(key);
    if (k == s->second.end()) throw ParseError(1, 1, "missing key '" + key + "' in section [" + sec + "]");
    return k->second;
}

inline const RawEntry* lookup(const RawInstance& raw, const std::string& sec, const std::string& key) {
    auto s = raw.sections.find(sec);
    if (s == raw.sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

inline long parse_long(const RawEntry& e, const std::string& what) {
    try {
        std::size_t used = 0;
        long v = std::stol(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(e.line, e.col, what + " must be an integer, got '" + e.value + "'");
    }
}

inline bool parse_bool(const RawEntry& e, const std::string& what) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ParseError(e.line, e.col, what + " must be true or false");
}

template <class B>
Instance<B> build_typed(const RawInstance& raw) {
    Instance<B> inst;

    const RawEntry& kind_e = require(raw, "k", "kind");
    ExtKind kind;
    if (kind_e.value == "sqrt")
        kind = ExtKind::Sqrt;
    else if (kind_e.value == "artin-schreier")
        kind = ExtKind::ArtinSchreier;
    else
        throw ParseError(kind_e.line, kind_e.col, "kind must be 'sqrt' or 'artin-schreier'");

    const RawEntry& d_e = require(raw, "k", "d");
    const RawEntry& b_e = require(raw, "quaternion", "b");
    B d = LiteralParser<B>(d_e.value, nullptr, d_e.line).parse_base();
    B b = LiteralParser<B>(b_e.value, nullptr, b_e.line).parse_base();
    try {
        inst.desc = make_desc<B>(kind, d, b);
    } catch (const Error& err) {
        throw ParseError(d_e.line, d_e.col, err.what());
    }

    const RawEntry& n_e = require(raw, "form", "n");
    long n = parse_long(n_e, "n");
    if (n < 1 || n > 16) throw ParseError(n_e.line, n_e.col, "n must be between 1 and 16");
    const RawEntry& s_e = require(raw, "form", "s");
    Mat<QuatK<B>> s = LiteralParser<B>(s_e.value, inst.desc, s_e.line).parse_quat_matrix();
    if (s.rows() != n) throw ParseError(s_e.line, s_e.col, "S must be an n x n matrix");
    inst.gram.emplace(std::move(s), inst.desc);

    if (const RawEntry* v_e = lookup(raw, "vector", "v")) {
        auto vec = LiteralParser<B>(v_e->value, inst.desc, v_e->line).parse_kt_vector();
        if (int(vec.size()) != n) throw ParseError(v_e->line, v_e->col, "vector must have n coordinates");
        inst.vector = std::move(vec);
    }

    if (auto* e = lookup(raw, "options", "seed")) inst.opts.seed = std::uint64_t(parse_long(*e, "seed"));
    if (auto* e = lookup(raw, "options", "height")) inst.opts.height = int(parse_long(*e, "height"));
    if (auto* e = lookup(raw, "options", "filtration")) inst.opts.filtration = int(parse_long(*e, "filtration"));
    if (auto* e = lookup(raw, "options", "samples")) inst.opts.samples = int(parse_long(*e, "samples"));
    if (auto* e = lookup(raw, "options", "max-steps")) inst.opts.max_steps = std::uint64_t(parse_long(*e, "max-steps"));
    if (auto* e = lookup(raw, "options", "assume-division"))
        inst.opts.assume_division = parse_bool(*e, "assume-division");
    return inst;
}

} // namespace instancedetail

inline AnyInstance parse_instance(const std::string& text) {
    RawInstance raw = scan_instance_text(text);
    const RawEntry& char_e = instancedetail::require(raw, "field", "char");
    long ch = instancedetail::parse_long(char_e, "char");
    if (const RawEntry* base_e = instancedetail::lookup(raw, "field", "base")) {
        if (ch == 0 && base_e->value != "Q")
            throw ParseError(base_e->line, base_e->col, "characteristic 0 base must be Q");
        if (ch == 2 && base_e->value != "F2(s)")
            throw ParseError(base_e->line, base_e->col, "characteristic 2 base must be F2(s)");
    }
    if (ch == 0) return instancedetail::build_typed<Rat>(raw);
    if (ch == 2) return instancedetail::build_typed<F2s>(raw);
    throw ParseError(char_e.line, char_e.col, "char must be 0 or 2");
}

} // namespace isoquat
