#include "nfvsim/generator_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nfvsim/errors.hpp"

namespace nfvsim {

bool is_prime(int x) {
    if (x < 2) return false;
    for (int d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

namespace {

int mod_pow(int base, int exp, int mod) {
    long long r = 1, b = base % mod;
    while (exp > 0) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return int(r);
}

int mod_inverse(int x, int p) { return mod_pow(x, p - 2, p); }

}  // namespace

int field_rank(const GeneratorMatrix& code) {
    const int p = code.p_prime;
    std::vector<int> m = code.entries;
    for (auto& e : m) e = ((e % p) + p) % p;
    int rank = 0;
    for (int col = 0; col < code.N && rank < code.K; ++col) {
        int pivot = -1;
        for (int row = rank; row < code.K; ++row)
            if (m[std::size_t(row) * code.N + col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        for (int c = 0; c < code.N; ++c)
            std::swap(m[std::size_t(rank) * code.N + c], m[std::size_t(pivot) * code.N + c]);
        const int inv = mod_inverse(m[std::size_t(rank) * code.N + col], p);
        for (int c = 0; c < code.N; ++c)
            m[std::size_t(rank) * code.N + c] = int(1LL * m[std::size_t(rank) * code.N + c] * inv % p);
        for (int row = 0; row < code.K; ++row) {
            if (row == rank) continue;
            const int f = m[std::size_t(row) * code.N + col];
            if (f == 0) continue;
            for (int c = 0; c < code.N; ++c) {
                long long v = m[std::size_t(row) * code.N + c] -
                              1LL * f * m[std::size_t(rank) * code.N + c] % p;
                m[std::size_t(row) * code.N + c] = int(((v % p) + p) % p);
            }
        }
        ++rank;
    }
    return rank;
}

void validate_generator_matrix(const GeneratorMatrix& code, bool full_code) {
    if (code.K < 1) throw ConfigError("generator matrix: K must be >= 1");
    if (code.N < 1) throw ConfigError("generator matrix: N must be >= 1");
    if (!is_prime(code.p_prime))
        throw ConfigError("generator matrix: p_prime " + std::to_string(code.p_prime) +
                          " is not prime");
    if (code.entries.size() != std::size_t(code.K) * code.N)
        throw ConfigError("generator matrix: entry count does not match K*N");
    for (int r = 0; r < code.K; ++r)
        for (int c = 0; c < code.N; ++c) {
            const int e = code.at(r, c);
            if (e < 0 || e >= code.p_prime)
                throw ConfigError("generator matrix: entry (" + std::to_string(r + 1) + "," +
                                  std::to_string(c + 1) + ") = " + std::to_string(e) +
                                  " outside [0, p'-1]");
        }
    for (int c = 0; c < code.N; ++c) {
        bool nonzero = false;
        for (int r = 0; r < code.K; ++r)
            if (code.at(r, c) != 0) nonzero = true;
        if (!nonzero)
            throw ConfigError("generator matrix: column " + std::to_string(c + 1) +
                              " is all zero (server " + std::to_string(c + 1) +
                              " would have nothing to decode)");
    }
    if (full_code) {
        if (code.K > code.N) throw ConfigError("generator matrix: K must not exceed N");
        if (field_rank(code) != code.K)
            throw ConfigError("generator matrix: rank mod p' is below K; the source packets "
                              "are not recoverable");
    }
}

GeneratorMatrix make_generator_matrix(int K, int N, int p_prime, std::vector<int> entries) {
    GeneratorMatrix code{K, N, p_prime, std::move(entries)};
    validate_generator_matrix(code);
    return code;
}

GeneratorMatrix submatrix(const GeneratorMatrix& code, std::span<const int> columns) {
    if (columns.empty()) throw ConfigError("submatrix: column subset must be non-empty");
    GeneratorMatrix out;
    out.K = code.K;
    out.N = int(columns.size());
    out.p_prime = code.p_prime;
    out.entries.resize(std::size_t(out.K) * out.N);
    for (int r = 0; r < out.K; ++r)
        for (int c = 0; c < out.N; ++c) {
            const int col = columns[c];
            if (col < 0 || col >= code.N)
                throw ConfigError("submatrix: column index " + std::to_string(col) +
                                  " out of range");
            out.at(r, c) = code.at(r, col);
        }
    validate_generator_matrix(out, /*full_code=*/false);
    return out;
}

namespace {

[[noreturn]] void scheme_error(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

GeneratorMatrix parse_scheme_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int K = -1, N = -1, p_prime = -1;
    std::vector<std::vector<int>> rows;
    std::vector<int> row_lines;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "K" || key == "N" || key == "p_prime") {
            long long value;
            if (!(ls >> value)) scheme_error(origin, lineno, "field '" + key + "': missing integer value");
            std::string extra;
            if (ls >> extra) scheme_error(origin, lineno, "field '" + key + "': trailing token '" + extra + "'");
            if (value < 1 || value > 1'000'000)
                scheme_error(origin, lineno, "field '" + key + "': value out of range");
            if (key == "K") K = int(value);
            else if (key == "N") N = int(value);
            else p_prime = int(value);
        } else if (key == "row") {
            std::vector<int> row;
            long long value;
            while (ls >> value) {
                if (value < 0 || value > 1'000'000)
                    scheme_error(origin, lineno, "field 'row': entry out of range");
                row.push_back(int(value));
            }
            if (!ls.eof()) scheme_error(origin, lineno, "field 'row': non-integer entry");
            if (row.empty()) scheme_error(origin, lineno, "field 'row': no entries");
            rows.push_back(std::move(row));
            row_lines.push_back(lineno);
        } else {
            scheme_error(origin, lineno, "unknown field '" + key + "'");
        }
    }
    if (K < 0) throw ConfigError(origin + ": missing field 'K'");
    if (N < 0) throw ConfigError(origin + ": missing field 'N'");
    if (p_prime < 0) throw ConfigError(origin + ": missing field 'p_prime'");
    if (!is_prime(p_prime)) throw ConfigError(origin + ": field 'p_prime': " +
                                              std::to_string(p_prime) + " is not prime");
    if (int(rows.size()) != K)
        throw ConfigError(origin + ": expected " + std::to_string(K) + " rows, got " +
                          std::to_string(rows.size()));
    GeneratorMatrix code;
    code.K = K;
    code.N = N;
    code.p_prime = p_prime;
    code.entries.reserve(std::size_t(K) * N);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (int(rows[r].size()) != N)
            scheme_error(origin, row_lines[r],
                         "field 'row': expected " + std::to_string(N) + " entries, got " +
                             std::to_string(rows[r].size()));
        for (int e : rows[r]) {
            if (e >= p_prime)
                scheme_error(origin, row_lines[r],
                             "field 'row': entry " + std::to_string(e) + " >= p_prime");
            code.entries.push_back(e);
        }
    }
    validate_generator_matrix(code);
    return code;
}

GeneratorMatrix load_scheme_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scheme file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scheme_text(ss.str(), path);
}

std::string format_scheme_text(const GeneratorMatrix& code) {
    std::ostringstream out;
    out << "K " << code.K << "\n" << "N " << code.N << "\n" << "p_prime " << code.p_prime << "\n";
    for (int r = 0; r < code.K; ++r) {
        out << "row";
        for (int c = 0; c < code.N; ++c) out << ' ' << code.at(r, c);
        out << "\n";
    }
    return out.str();
}

}  // namespace nfvsim
