// Catalog of built-in coding schemes over the shared frame parameters.
//
// Builders: ss (single server), rpt (repetition), prl (parallel identity,
// optionally scaled), spc (single parity check [I | 1]), nfv (bundled 4x8
// code with d_min = 3 and chromatic number 3), custom (scheme file or
// inline matrix).
#pragma once

#include <optional>
#include <string>

#include "nfvsim/generator_matrix.hpp"

namespace nfvsim {

struct FrameParams {
    double L = 504;  // frame length in user-field symbols
    double R = 0.5;  // user transmission rate, bits per channel use
    int p = 2;       // user field prime
};

enum class Builder { ss, rpt, prl, spc, nfv, custom };
const char* to_string(Builder b);
Builder builder_from_string(const std::string& name);

struct SchemeSpec {
    std::string name;
    Builder builder = Builder::prl;
    double L = 0;   // frame length; 0 means "take it from FrameParams"
    int N = 8;      // servers (ss forces 1; nfv requires 8)
    int scale = 1;  // integer multiplier on the base matrix entries
    int p_prime = 2;
    std::optional<std::string> custom_path;       // scheme file for builder custom
    std::optional<GeneratorMatrix> custom_matrix; // alternative to custom_path
};

struct BuiltScheme {
    std::string name;
    GeneratorMatrix code;
    int n = 1;  // per-server block length in channel uses
    int K = 1;
    bool nfv_standin = false;
};

// The bundled 4x8 binary code: identity columns plus the edge columns of a
// 4-cycle. Verified d_min = 3, chromatic number 3; a stand-in with the same
// published invariants as the original reference matrix, which is not
// reproduced here. Outputs carry a stand-in flag.
const GeneratorMatrix& nfv_reference_matrix();

// Builds the generator matrix and derives the per-server block length n
// from R = k/n * log2(p) with k = L/K. Throws ConfigError on divisibility
// or field-size violations.
BuiltScheme build(const SchemeSpec& spec, const FrameParams& frame);

}  // namespace nfvsim
