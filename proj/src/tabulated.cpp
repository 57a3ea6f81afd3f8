// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#include "flowlab/tabulated.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "flowlab/error.hpp"

namespace flowlab {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

double parse_double_token(const std::string& source, int line, const Token& tok,
                          const std::string& what) {
    double value = 0.0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(source, line, tok.column, "expected " + what + ", got '" + tok.text + "'");
    }
    return value;
}

struct RawRecord {
    std::string condition;
    double t;
    Vec z;
    Vec v;
};

}  // namespace

TabulatedField TabulatedField::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errkind::io, "cannot open tabulated field file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

TabulatedField TabulatedField::parse(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    std::size_t dim = 0;
    std::set<std::string> declared;
    bool header_seen = false;
    std::vector<RawRecord> records;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (!header_seen) {
            if (tokens.size() != 2 || tokens[0].text.rfind("dim=", 0) != 0 ||
                tokens[1].text.rfind("conditions=", 0) != 0) {
                throw ParseError(source, line_no, tokens[0].column,
                                 "expected header 'dim=<d> conditions=<comma list>'");
            }
            const std::string dim_str = tokens[0].text.substr(4);
            int d = 0;
            auto [ptr, ec] = std::from_chars(dim_str.data(), dim_str.data() + dim_str.size(), d);
            if (ec != std::errc() || ptr != dim_str.data() + dim_str.size() || d < 1) {
                throw ParseError(source, line_no, tokens[0].column, "invalid dimension '" + dim_str + "'");
            }
            dim = static_cast<std::size_t>(d);
            std::string list = tokens[1].text.substr(11);
            std::size_t pos = 0;
            while (pos <= list.size()) {
                const std::size_t comma = std::min(list.find(',', pos), list.size());
                const std::string id = list.substr(pos, comma - pos);
                if (id.empty()) {
                    throw ParseError(source, line_no, tokens[1].column, "empty condition id in header");
                }
                declared.insert(id);
                pos = comma + 1;
            }
            header_seen = true;
            continue;
        }

        // Record: c=<id> t=<float> z=<d floats> v=<d floats>
        const std::size_t expected = 2 + 2 * dim;
        if (tokens.size() != expected) {
            throw ParseError(source, line_no,
                             tokens.size() > expected ? tokens[expected].column
                                                      : tokens.back().column + static_cast<int>(tokens.back().text.size()),
                             "expected " + std::to_string(expected) + " fields, got " +
                                 std::to_string(tokens.size()));
        }
        RawRecord rec;
        if (tokens[0].text.rfind("c=", 0) != 0) {
            throw ParseError(source, line_no, tokens[0].column, "expected 'c=<id>'");
        }
        rec.condition = tokens[0].text.substr(2);
        if (!declared.count(rec.condition)) {
            throw ParseError(source, line_no, tokens[0].column,
                             "condition '" + rec.condition + "' not declared in header");
        }
        if (tokens[1].text.rfind("t=", 0) != 0) {
            throw ParseError(source, line_no, tokens[1].column, "expected 't=<float>'");
        }
        rec.t = parse_double_token(source, line_no, {tokens[1].text.substr(2), tokens[1].column + 2},
                                   "time value");
        if (!(rec.t >= 0.0 && rec.t <= 1.0)) {
            throw ParseError(source, line_no, tokens[1].column, "time outside [0, 1]");
        }
        std::size_t cursor = 2;
        auto read_block = [&](const char* tag, Vec& out) {
            const Token& head = tokens[cursor];
            const std::string prefix = std::string(tag) + "=";
            if (head.text.rfind(prefix, 0) != 0) {
                throw ParseError(source, line_no, head.column, "expected '" + prefix + "<float>'");
            }
            out.reserve(dim);
            out.push_back(parse_double_token(
                source, line_no, {head.text.substr(prefix.size()), head.column + static_cast<int>(prefix.size())},
                "float"));
            ++cursor;
            for (std::size_t i = 1; i < dim; ++i, ++cursor) {
                out.push_back(parse_double_token(source, line_no, tokens[cursor], "float"));
            }
        };
        read_block("z", rec.z);
        read_block("v", rec.v);
        records.push_back(std::move(rec));
    }

    if (!header_seen) throw ParseError(source, std::max(line_no, 1), 1, "missing header line");

    TabulatedField field;
    field.dim_ = dim;

    // Group per condition and require a complete lattice over (z axes, t).
    std::map<std::string, std::vector<const RawRecord*>> by_condition;
    for (const auto& rec : records) by_condition[rec.condition].push_back(&rec);

    for (const auto& [cond, recs] : by_condition) {
        Table table;
        table.axes.assign(dim + 1, {});
        std::vector<std::set<double>> axis_sets(dim + 1);
        for (const auto* rec : recs) {
            for (std::size_t i = 0; i < dim; ++i) axis_sets[i].insert(rec->z[i]);
            axis_sets[dim].insert(rec->t);
        }
        std::size_t cells = 1;
        for (std::size_t a = 0; a <= dim; ++a) {
            table.axes[a].assign(axis_sets[a].begin(), axis_sets[a].end());
            cells *= table.axes[a].size();
        }
        if (cells != recs.size()) {
            throw Error(errkind::parse, "tabulated field '" + source + "': condition '" + cond +
                                            "' does not fill a complete lattice (" +
                                            std::to_string(recs.size()) + " records, " +
                                            std::to_string(cells) + " lattice nodes)");
        }
        table.velocities.assign(cells, {});
        for (const auto* rec : recs) {
            std::size_t index = 0;
            for (std::size_t a = 0; a <= dim; ++a) {
                const double q = a < dim ? rec->z[a] : rec->t;
                const auto& axis = table.axes[a];
                const auto it = std::lower_bound(axis.begin(), axis.end(), q);
                index = index * axis.size() + static_cast<std::size_t>(it - axis.begin());
            }
            if (!table.velocities[index].empty()) {
                throw Error(errkind::parse,
                            "tabulated field '" + source + "': duplicate node for condition '" + cond + "'");
            }
            table.velocities[index] = rec->v;
        }
        field.tables_.emplace(cond, std::move(table));
    }
    for (const auto& id : declared) {
        if (!field.tables_.count(id)) {
            throw Error(errkind::parse,
                        "tabulated field '" + source + "': declared condition '" + id + "' has no records");
        }
    }
    return field;
}

bool TabulatedField::has_condition(const Condition& c) const {
    return !c.is_null() && tables_.count(c.id()) > 0;
}

Vec TabulatedField::eval(const Vec& z, double t, const Condition& c) const {
    if (c.is_null()) {
        throw Error(errkind::unknown_condition, "tabulated field has no null condition");
    }
    const auto it = tables_.find(c.id());
    if (it == tables_.end()) {
        throw Error(errkind::unknown_condition, "tabulated field: unknown condition '" + c.id() + "'");
    }
    if (z.size() != dim_) throw Error(errkind::invalid_argument, "tabulated field: dimension mismatch");
    const Table& table = it->second;

    // Bracketing index and upper-node weight per axis.
    struct AxisPos {
        std::size_t lo;
        double w_hi;  // 0 when the axis is a single node
    };
    std::vector<AxisPos> pos(dim_ + 1);
    for (std::size_t a = 0; a <= dim_; ++a) {
        const double q = a < dim_ ? z[a] : t;
        const auto& axis = table.axes[a];
        if (q < axis.front() || q > axis.back()) {
            throw Error(errkind::out_of_domain,
                        "query outside tabulated hull on axis " +
                            (a < dim_ ? "z" + std::to_string(a) : std::string("t")));
        }
        if (axis.size() == 1) {
            pos[a] = {0, 0.0};
            continue;
        }
        auto up = std::upper_bound(axis.begin(), axis.end(), q);
        std::size_t lo = up == axis.begin() ? 0 : static_cast<std::size_t>(up - axis.begin()) - 1;
        lo = std::min(lo, axis.size() - 2);
        pos[a] = {lo, (q - axis[lo]) / (axis[lo + 1] - axis[lo])};
    }

    Vec out(dim_, 0.0);
    const std::size_t corners = std::size_t{1} << (dim_ + 1);
    for (std::size_t mask = 0; mask < corners; ++mask) {
        double weight = 1.0;
        std::size_t index = 0;
        bool skip = false;
        for (std::size_t a = 0; a <= dim_; ++a) {
            const bool hi = (mask >> a) & 1u;
            const auto& axis = table.axes[a];
            if (hi && axis.size() == 1) {
                skip = true;
                break;
            }
            weight *= hi ? pos[a].w_hi : 1.0 - pos[a].w_hi;
            index = index * axis.size() + pos[a].lo + (hi ? 1 : 0);
        }
        if (skip || weight == 0.0) continue;
        const Vec& corner = table.velocities[index];
        for (std::size_t i = 0; i < dim_; ++i) out[i] += weight * corner[i];
    }
    return out;
}

}  // namespace flowlab
