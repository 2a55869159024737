#pragma once

#include <string>
#include <string_view>

#include "hyperdisc/errors.hpp"

namespace hyperdisc {

// Node/token kinds. Tokens are stored with a one-character kind prefix
// ("a:", "m:", "p:") so that an author name can never collide with a
// chemical name in any index.
enum class Kind : unsigned char { Author = 0, Material = 1, Property = 2 };

inline constexpr char kind_prefix(Kind k) {
    switch (k) {
        case Kind::Author: return 'a';
        case Kind::Material: return 'm';
        case Kind::Property: return 'p';
    }
    return '?';
}

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Author: return "author";
        case Kind::Material: return "material";
        case Kind::Property: return "property";
    }
    return "?";
}

// Raw tokens come from input files without a namespace. They may contain any
// non-whitespace UTF-8; whitespace is rejected because walk files and TSV
// exports use it as the field separator.
inline bool valid_raw_token(std::string_view raw) {
    if (raw.empty()) return false;
    for (char c : raw) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return false;
    }
    return true;
}

inline std::string namespaced(Kind k, std::string_view raw) {
    std::string out;
    out.reserve(raw.size() + 2);
    out.push_back(kind_prefix(k));
    out.push_back(':');
    out.append(raw);
    return out;
}

inline bool is_namespaced(std::string_view token) {
    return token.size() >= 2 && token[1] == ':' &&
           (token[0] == 'a' || token[0] == 'm' || token[0] == 'p');
}

inline Kind token_kind(std::string_view token) {
    if (!is_namespaced(token))
        throw ArgumentError("token '" + std::string(token) + "' lacks a kind prefix (a:/m:/p:)");
    switch (token[0]) {
        case 'a': return Kind::Author;
        case 'm': return Kind::Material;
        case 'p': return Kind::Property;
    }
    throw ArgumentError("token '" + std::string(token) + "' has unknown kind prefix");
}

inline std::string_view strip_namespace(std::string_view token) {
    return is_namespaced(token) ? token.substr(2) : token;
}

}  // namespace hyperdisc
