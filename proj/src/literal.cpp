#include "skewflow/literal.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "skewflow/error.hpp"

namespace skewflow {

namespace {

struct Field {
    std::string value;
    std::size_t position; // of the value's first character
    char open = 0;
};

std::map<std::string, Field> split_fields(std::string_view text) {
    std::map<std::string, Field> fields;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    for (skip_space(); i < text.size(); skip_space()) {
        const std::size_t key_start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
            ++i;
        if (i == key_start || i >= text.size() || text[i] != '=')
            throw ParseError("expected key=value", key_start);
        std::string key(text.substr(key_start, i - key_start));
        ++i;
        Field field;
        if (i < text.size() && (text[i] == '(' || text[i] == '[')) {
            field.open = text[i];
            const char close = text[i] == '(' ? ')' : ']';
            const auto end = text.find(close, i + 1);
            if (end == std::string_view::npos)
                throw ParseError(std::string("unterminated '") + text[i] + "'", i);
            field.position = i + 1;
            field.value = std::string(text.substr(i + 1, end - i - 1));
            i = end + 1;
        } else {
            field.position = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            field.value = std::string(text.substr(field.position, i - field.position));
            if (field.value.empty()) throw ParseError("empty value for '" + key + "'", field.position);
        }
        if (fields.count(key)) throw ParseError("duplicate key '" + key + "'", key_start);
        fields.emplace(std::move(key), std::move(field));
    }
    return fields;
}

Word parse_word(const Field& field, const DirectedGraph& g) {
    Word word;
    const auto& s = field.value;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',') ++i;
        const std::string token = s.substr(start, i - start);
        if (auto v = g.find_label(token)) {
            word.push_back(*v);
            continue;
        }
        Vertex index = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
        if (ec == std::errc() && end == token.data() + token.size()) {
            if (index >= g.vertex_count())
                throw ParseError("vertex index " + token + " out of range", field.position + start);
            word.push_back(index);
            continue;
        }
        for (std::size_t c = 0; c < token.size(); ++c) {
            auto v = g.find_label(std::string_view(token).substr(c, 1));
            if (!v) throw ParseError("unknown vertex '" + token + "'", field.position + start + c);
            word.push_back(*v);
        }
    }
    return word;
}

template <typename T>
T parse_number(const Field& field, const char* what) {
    T value{};
    const auto* first = field.value.data();
    const auto* last = first + field.value.size();
    const auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || end != last)
        throw ParseError(std::string("invalid ") + what + " '" + field.value + "'", field.position);
    return value;
}

SymbolicSequence sequence_from_fields(const std::map<std::string, Field>& fields,
                                      const DirectedGraph& g) {
    const auto right_it = fields.find("right");
    if (right_it == fields.end()) throw ParseError("missing right=(word)", 0);
    Word right = parse_word(right_it->second, g);
    if (right.empty()) throw ParseError("right period is empty", right_it->second.position);

    Word left = right;
    if (auto it = fields.find("left"); it != fields.end()) {
        left = parse_word(it->second, g);
        if (left.empty()) throw ParseError("left period is empty", it->second.position);
    }
    Word core;
    if (auto it = fields.find("core"); it != fields.end()) core = parse_word(it->second, g);
    Index index_shift = 0;
    if (auto it = fields.find("shift"); it != fields.end())
        index_shift = parse_number<Index>(it->second, "shift");

    SymbolicSequence x(std::move(left), std::move(core), std::move(right), index_shift);
    if (!x.is_admissible(g)) throw ValidationError("sequence literal is not admissible for the graph");
    return x;
}

void reject_unknown(const std::map<std::string, Field>& fields, bool allow_signal) {
    for (const auto& [key, field] : fields) {
        const bool known = key == "left" || key == "core" || key == "right" || key == "shift" ||
                           (allow_signal && (key == "tau" || key == "h"));
        if (!known) throw ParseError("unknown key '" + key + "'", field.position);
    }
}

} // namespace

SymbolicSequence parse_sequence_literal(std::string_view text, const DirectedGraph& g) {
    const auto fields = split_fields(text);
    reject_unknown(fields, false);
    return sequence_from_fields(fields, g);
}

SwitchingSignal parse_signal_literal(std::string_view text, const DirectedGraph& g,
                                     std::optional<double> default_step) {
    const auto fields = split_fields(text);
    reject_unknown(fields, true);
    auto base = sequence_from_fields(fields, g);
    double tau = 0.0;
    if (auto it = fields.find("tau"); it != fields.end()) tau = parse_number<double>(it->second, "tau");
    std::optional<double> step = default_step;
    if (auto it = fields.find("h"); it != fields.end()) step = parse_number<double>(it->second, "h");
    if (!step) throw ParseError("missing h=<real>", text.size());
    if (default_step && std::abs(*step - *default_step) > 1e-12 * *default_step)
        throw ValidationError("signal step h differs from the system step");
    return SwitchingSignal(std::move(base), *step, tau);
}

bool is_signal_literal(std::string_view text) {
    const auto fields = split_fields(text);
    return fields.count("tau") > 0 || fields.count("h") > 0;
}

std::string format_real(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

std::string format_sequence(const SymbolicSequence& x, const DirectedGraph& g) {
    return "left=(" + g.format_word(x.left_period()) + ") core=[" + g.format_word(x.core()) +
           "] right=(" + g.format_word(x.right_period()) + ") shift=" + std::to_string(x.index_shift());
}

std::string format_signal(const SwitchingSignal& f, const DirectedGraph& g) {
    return format_sequence(f.base(), g) + " tau=" + format_real(f.offset()) + " h=" + format_real(f.step());
}

} // namespace skewflow
