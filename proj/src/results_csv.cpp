#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "initpop/errors.hpp"
#include "initpop/experiment.hpp"
#include "initpop/format.hpp"

namespace initpop {
namespace {

constexpr std::array<std::string_view, 10> columns = {
    "algorithm", "init_method", "function",      "np",           "t",
    "run_index", "best_value",  "fe_used",       "initial_delta", "best_position"};

void write_field(std::ostream& out, std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

// Splits one CSV record (RFC 4180 quoting; no embedded newlines).
std::vector<std::string> split_record(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool field_was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            if (!current.empty() || field_was_quoted) {
                throw ParseError("line " + std::to_string(line_no) + ": stray quote");
            }
            quoted = true;
            field_was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            field_was_quoted = false;
        } else {
            current += c;
        }
    }
    if (quoted) {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
    }
    fields.push_back(std::move(current));
    return fields;
}

double parse_number(const std::string& text, std::size_t line_no, std::string_view column)
{
    double value = 0.0;
    if (!parse_double(text, value)) {
        throw ParseError("line " + std::to_string(line_no) + ": column '" + std::string(column) +
                         "' is not a number: '" + text + "'");
    }
    return value;
}

std::size_t parse_count(const std::string& text, std::size_t line_no, std::string_view column)
{
    std::size_t value = 0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError("line " + std::to_string(line_no) + ": column '" + std::string(column) +
                         "' is not a non-negative integer: '" + text + "'");
    }
    return value;
}

}  // namespace

void export_csv(const ResultStore& store, std::ostream& out)
{
    ResultStore sorted = store;
    sorted.sort();
    out << results_csv_header << '\n';
    for (const auto& r : sorted.records) {
        write_field(out, r.algorithm);
        out << ',';
        write_field(out, r.init_method);
        out << ',';
        write_field(out, r.function);
        out << ',' << r.np << ',' << r.t << ',' << r.run_index << ','
            << format_double(r.best_value) << ',' << r.fe_used << ','
            << format_double(r.initial_delta) << ',';
        std::string position;
        for (std::size_t j = 0; j < r.best_position.size(); ++j) {
            if (j > 0) {
                position += ';';
            }
            position += format_double(r.best_position[j]);
        }
        write_field(out, position);
        out << '\n';
    }
}

void export_csv(const ResultStore& store, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    export_csv(store, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed while writing " + path.string());
    }
}

ResultStore import_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("line 1: missing header");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_record(line, 1);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c >= header.size() || header[c] != columns[c]) {
            throw ParseError("line 1: expected column '" + std::string(columns[c]) + "' at position " +
                             std::to_string(c + 1));
        }
    }
    if (header.size() != columns.size()) {
        throw ParseError("line 1: unexpected extra columns");
    }

    ResultStore store;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_record(line, line_no);
        if (f.size() < columns.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": missing column '" +
                             std::string(columns[f.size()]) + "'");
        }
        if (f.size() > columns.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": too many columns");
        }
        RunRecord r;
        r.algorithm = f[0];
        r.init_method = f[1];
        r.function = f[2];
        r.np = parse_count(f[3], line_no, columns[3]);
        r.t = parse_count(f[4], line_no, columns[4]);
        r.run_index = parse_count(f[5], line_no, columns[5]);
        r.best_value = parse_number(f[6], line_no, columns[6]);
        r.fe_used = parse_count(f[7], line_no, columns[7]);
        r.initial_delta = parse_number(f[8], line_no, columns[8]);
        if (!f[9].empty()) {
            std::size_t start = 0;
            while (true) {
                const std::size_t end = f[9].find(';', start);
                r.best_position.push_back(
                    parse_number(f[9].substr(start, end - start), line_no, columns[9]));
                if (end == std::string::npos) {
                    break;
                }
                start = end + 1;
            }
        }
        r.lineage = r.algorithm + "/" + r.init_method + "/" + r.function + "/" +
                    std::to_string(r.np) + "/" + std::to_string(r.run_index);
        store.records.push_back(std::move(r));
    }
    return store;
}

ResultStore import_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return import_csv(in);
}

}  // namespace initpop
