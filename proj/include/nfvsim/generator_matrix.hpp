// Generator matrix of the cloud's linear code over a prime field.
//
// The matrix is stored as K x N (source packets x servers) so that server i
// owns column i. Entries are the natural-map integer images {0, ..., p'-1}.
#pragma once

#include <span>
#include <string>
#include <vector>

namespace nfvsim {

struct GeneratorMatrix {
    int K = 0;        // number of source packets (rows)
    int N = 0;        // number of servers (columns)
    int p_prime = 2;  // field prime
    std::vector<int> entries;  // row-major, K * N

    int at(int row, int col) const { return entries[std::size_t(row) * N + col]; }
    int& at(int row, int col) { return entries[std::size_t(row) * N + col]; }
};

bool is_prime(int x);

// Rank of the matrix reduced mod p_prime.
int field_rank(const GeneratorMatrix& code);

// Throws ConfigError when an invariant is violated. Full codes additionally
// require K <= N and rank K; column restrictions waive both.
void validate_generator_matrix(const GeneratorMatrix& code, bool full_code = true);

// Validating constructor for a full code.
GeneratorMatrix make_generator_matrix(int K, int N, int p_prime, std::vector<int> entries);

// Column restriction to the given server indices (0-based, in the given
// order). The rank and K <= N invariants are waived for the result.
GeneratorMatrix submatrix(const GeneratorMatrix& code, std::span<const int> columns);

// Scheme definition file: "K <int>", "N <int>", "p_prime <int>" and K lines
// "row <e1> ... <eN>". '#' starts a comment. Errors carry file:line context.
GeneratorMatrix parse_scheme_text(const std::string& text, const std::string& origin);
GeneratorMatrix load_scheme_file(const std::string& path);
std::string format_scheme_text(const GeneratorMatrix& code);

}  // namespace nfvsim
