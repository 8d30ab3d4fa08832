#include "trajplan/mcda/csv.hpp"

#include <charconv>
#include <sstream>

#include "trajplan/error.hpp"

namespace trajplan::mcda {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidMatrix, what); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        bad("line " + std::to_string(line_no) + ": '" + std::string(s) + "' is not a number");
    return v;
}

AlternativeId parse_id(std::string_view s, std::size_t line_no) {
    AlternativeId v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        bad("line " + std::to_string(line_no) + ": '" + std::string(s) +
            "' is not an alternative id");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

DecisionMatrix read_matrix_csv(std::string_view text, const CriteriaSet& criteria) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    std::size_t first = 0;
    while (first < lines.size() && trim(lines[first]).empty()) ++first;
    if (first == lines.size()) bad("matrix file is empty");

    auto header = split(lines[first]);
    // column k of the file (k >= 1) -> criterion index
    std::vector<std::size_t> column_to_criterion;
    std::vector<bool> covered(criteria.size(), false);
    for (std::size_t k = 1; k < header.size(); ++k) {
        auto idx = criteria.index_of(header[k]);
        if (!idx) bad("matrix column '" + std::string(header[k]) + "' is not a defined criterion");
        if (covered[*idx]) bad("matrix column '" + std::string(header[k]) + "' appears twice");
        covered[*idx] = true;
        column_to_criterion.push_back(*idx);
    }
    for (std::size_t j = 0; j < criteria.size(); ++j)
        if (!covered[j]) bad("matrix is missing column '" + criteria[j].id + "'");

    std::vector<Alternative> alternatives;
    for (std::size_t l = first + 1; l < lines.size(); ++l) {
        if (trim(lines[l]).empty()) continue;
        auto cells = split(lines[l]);
        if (cells.size() != header.size())
            bad("line " + std::to_string(l + 1) + " has " + std::to_string(cells.size()) +
                " cells, header has " + std::to_string(header.size()));
        Alternative alt{parse_id(cells[0], l + 1), std::nullopt,
                        std::vector<double>(criteria.size())};
        for (std::size_t k = 1; k < cells.size(); ++k)
            alt.values[column_to_criterion[k - 1]] = parse_double(cells[k], l + 1);
        alternatives.push_back(std::move(alt));
    }
    return DecisionMatrix(criteria, std::move(alternatives));
}

std::string write_matrix_csv(const DecisionMatrix& matrix) {
    std::ostringstream out;
    out << "id";
    for (const auto& c : matrix.criteria().criteria()) out << ',' << c.id;
    out << '\n';
    for (const auto& a : matrix.alternatives()) {
        out << a.id;
        for (double v : a.values) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

}  // namespace trajplan::mcda
