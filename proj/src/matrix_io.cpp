#include "combinf/matrix_io.hpp"

#include "combinf/errors.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace combinf {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            cells.push_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    cells.push_back(trim(cell));
    return cells;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) {
        return false;
    }
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (*begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

ConnectivityMatrix read_matrix_csv(std::istream& in, double symmetry_tolerance,
                                   const std::string& source) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        rows.push_back(split_csv_line(line));
        line_numbers.push_back(line_no);
    }
    if (rows.empty()) {
        throw DataError(source + ": empty matrix file");
    }

    std::vector<std::string> labels;
    std::size_t first_data = 0;
    double scratch = 0.0;
    for (const auto& cell : rows.front()) {
        if (!parse_number(cell, scratch)) {
            labels = rows.front();
            first_data = 1;
            break;
        }
    }

    const std::size_t p = rows.size() - first_data;
    if (p == 0) {
        throw DataError(source + ": header row but no data rows");
    }
    if (!labels.empty() && labels.size() != p) {
        throw DataError(source + ": header has " + std::to_string(labels.size()) +
                        " labels but there are " + std::to_string(p) + " data rows");
    }
    Matrix m(p, p);
    for (std::size_t r = 0; r < p; ++r) {
        const auto& cells = rows[first_data + r];
        const std::size_t file_row = line_numbers[first_data + r];
        if (cells.size() != p) {
            throw DataError(source + ": row " + std::to_string(file_row) + " has " +
                            std::to_string(cells.size()) + " columns, expected " +
                            std::to_string(p) + " (matrix must be square)");
        }
        for (std::size_t c = 0; c < p; ++c) {
            if (!parse_number(cells[c], m(r, c))) {
                throw DataError(source + ": row " + std::to_string(file_row) + ", column " +
                                std::to_string(c + 1) + ": '" + cells[c] + "' is not a number");
            }
        }
    }
    try {
        return ConnectivityMatrix(std::move(labels), std::move(m), symmetry_tolerance);
    } catch (const DataError& e) {
        throw DataError(source + ": " + e.what());
    }
}

ConnectivityMatrix read_matrix_csv(const std::filesystem::path& path, double symmetry_tolerance) {
    std::ifstream in(path);
    if (!in) {
        throw DataError(path.string() + ": cannot open file");
    }
    return read_matrix_csv(in, symmetry_tolerance, path.string());
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels, const Matrix& m) {
    for (std::size_t c = 0; c < labels.size(); ++c) {
        out << (c ? "," : "") << labels[c];
    }
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out << (c ? "," : "") << format_double(m(r, c));
        }
        out << '\n';
    }
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& labels,
                      const Matrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError(path.string() + ": cannot open for writing");
    }
    write_matrix_csv(out, labels, m);
}

std::vector<std::string> read_label_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError(path.string() + ": cannot open label file");
    }
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        for (auto& cell : split_csv_line(line)) {
            if (!cell.empty()) {
                labels.push_back(std::move(cell));
            }
        }
    }
    if (labels.empty()) {
        throw DataError(path.string() + ": label file is empty");
    }
    return labels;
}

TwinCohort load_cohort_manifest(const std::filesystem::path& manifest, double symmetry_tolerance) {
    std::ifstream in(manifest);
    if (!in) {
        throw DataError(manifest.string() + ": cannot open manifest");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(manifest.string() + ": invalid JSON (" + e.what() + ")");
    }
    const auto base = manifest.parent_path();
    auto resolve = [&](const nlohmann::json& v, const std::string& pointer) {
        if (!v.is_string()) {
            throw DataError(manifest.string() + ": " + pointer + " must be a path string");
        }
        std::filesystem::path p = v.get<std::string>();
        return p.is_absolute() ? p : base / p;
    };

    std::vector<std::string> labels;
    if (doc.contains("labels_from") && !doc["labels_from"].is_null()) {
        labels = read_label_file(resolve(doc["labels_from"], "/labels_from"));
    }
    if (!doc.contains("pairs") || !doc["pairs"].is_array()) {
        throw DataError(manifest.string() + ": /pairs must be an array");
    }
    auto load = [&](const std::filesystem::path& file) {
        auto m = read_matrix_csv(file, symmetry_tolerance);
        if (labels.empty()) {
            return m;
        }
        if (labels.size() != m.size()) {
            throw DataError(file.string() + ": " + std::to_string(m.size()) +
                            " nodes but the label file lists " + std::to_string(labels.size()));
        }
        return ConnectivityMatrix(labels, m.entries(), symmetry_tolerance);
    };
    std::vector<TwinCohort::Pair> pairs;
    const auto& arr = doc["pairs"];
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string pointer = "/pairs/" + std::to_string(k);
        if (!arr[k].is_object() || !arr[k].contains("a") || !arr[k].contains("b")) {
            throw DataError(manifest.string() + ": " + pointer + " needs \"a\" and \"b\"");
        }
        pairs.push_back({load(resolve(arr[k]["a"], pointer + "/a")),
                         load(resolve(arr[k]["b"], pointer + "/b"))});
    }
    try {
        return TwinCohort(std::move(pairs));
    } catch (const Error& e) {
        throw DataError(manifest.string() + ": " + e.what());
    }
}

}  // namespace combinf
