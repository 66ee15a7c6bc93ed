#include "popalign/io.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "popalign/errors.hpp"

namespace popalign {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// "user_id,item_id"-style labels: letters/underscores only, no digits
bool looks_like_header(const std::vector<std::string>& fields) {
    for (const std::string& f : fields) {
        if (f.empty()) return false;
        for (char c : f)
            if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_' && c != ' ') return false;
    }
    return true;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

struct IdMap {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::string> ids;

    std::size_t intern(const std::string& id) {
        auto [it, inserted] = index.try_emplace(id, ids.size());
        if (inserted) ids.push_back(id);
        return it->second;
    }
};

long long parse_int(const std::string& token, std::size_t line, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("expected an integer for ") + what + ", got '" + token + "'",
                         line);
    }
}

}  // namespace

ParsedInteractions parse_edge_list(std::istream& in, EdgeListFormat format) {
    const char sep = format == EdgeListFormat::csv ? ',' : '\t';
    IdMap users, items;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split(line, sep);
        if (first_content) {
            first_content = false;
            if (looks_like_header(fields)) continue;
        }
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw ParseError("expected 'user" + std::string(1, sep) + "item'", line_no);
        edges.emplace_back(users.intern(fields[0]), items.intern(fields[1]));
    }
    if (edges.empty()) throw ParseError("empty input: no interaction rows found");

    std::size_t duplicates = 0;
    ParsedInteractions out{
        InteractionMatrix::from_edges(users.ids.size(), items.ids.size(), edges, &duplicates),
        std::move(users.ids), std::move(items.ids), duplicates, 0};
    return out;
}

ParsedInteractions parse_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty input: missing MatrixMarket banner");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream banner(line);
    std::string tag, object, fmt, field, symmetry;
    banner >> tag >> object >> fmt >> field >> symmetry;
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(fmt) != "coordinate")
        throw ParseError("banner mismatch: expected '%%MatrixMarket matrix coordinate ...'", line_no);
    const std::string field_l = lower(field);
    const bool pattern = field_l == "pattern";
    if (!pattern && field_l != "integer")
        throw ParseError("unsupported field '" + field + "': only pattern and integer are accepted",
                         line_no);
    if (lower(symmetry) != "general")
        throw ParseError("unsupported symmetry '" + symmetry + "': only general is accepted",
                         line_no);

    // size line (comments may precede it)
    std::size_t n = 0, m = 0, declared = 0;
    while (true) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of input before size line");
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        std::istringstream sizes(t);
        long long rows = 0, cols = 0, nnz = 0;
        if (!(sizes >> rows >> cols >> nnz) || rows < 1 || cols < 1 || nnz < 0)
            throw ParseError("malformed size line '" + t + "'", line_no);
        n = static_cast<std::size_t>(rows);
        m = static_cast<std::size_t>(cols);
        declared = static_cast<std::size_t>(nnz);
        break;
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t binarized = 0;
    std::size_t read = 0;
    while (read < declared) {
        if (!std::getline(in, line))
            throw ParseError("unexpected end of input: " + std::to_string(declared - read) +
                             " entries missing");
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        ++read;
        std::istringstream entry(t);
        std::string row_tok, col_tok, val_tok;
        if (!(entry >> row_tok >> col_tok))
            throw ParseError("malformed coordinate entry '" + t + "'", line_no);
        const long long row = parse_int(row_tok, line_no, "row index");
        const long long col = parse_int(col_tok, line_no, "column index");
        if (row < 1 || static_cast<std::size_t>(row) > n || col < 1 ||
            static_cast<std::size_t>(col) > m)
            throw ParseError("index (" + std::to_string(row) + ", " + std::to_string(col) +
                                 ") outside the declared " + std::to_string(n) + " x " +
                                 std::to_string(m) + " shape",
                             line_no);
        long long value = 1;
        if (!pattern) {
            if (!(entry >> val_tok))
                throw ParseError("integer entry missing its value", line_no);
            value = parse_int(val_tok, line_no, "value");
        }
        if (value == 0) continue;  // stored zero: no edge
        if (value != 1) ++binarized;
        edges.emplace_back(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1));
    }
    if (edges.empty()) throw ParseError("empty input: no nonzero entries");

    std::size_t duplicates = 0;
    ParsedInteractions out{InteractionMatrix::from_edges(n, m, edges, &duplicates), {}, {},
                           duplicates, binarized};
    out.user_ids.reserve(n);
    out.item_ids.reserve(m);
    for (std::size_t u = 1; u <= n; ++u) out.user_ids.push_back(std::to_string(u));
    for (std::size_t i = 1; i <= m; ++i) out.item_ids.push_back(std::to_string(i));
    return out;
}

void write_matrix_market(std::ostream& out, const InteractionMatrix& Y) {
    out << "%%MatrixMarket matrix coordinate pattern general\n";
    out << Y.users() << " " << Y.items() << " " << Y.edge_count() << "\n";
    for (std::size_t u = 0; u < Y.users(); ++u)
        for (std::size_t i = 0; i < Y.items(); ++i)
            if (Y.at(u, i)) out << (u + 1) << " " << (i + 1) << "\n";
}

void write_edge_list(std::ostream& out, const InteractionMatrix& Y, char sep) {
    for (std::size_t u = 0; u < Y.users(); ++u)
        for (std::size_t i = 0; i < Y.items(); ++i)
            if (Y.at(u, i)) out << "u" << u << sep << "i" << i << "\n";
}

} // namespace popalign
