#include "nfvsim/schemes.hpp"

#include <cmath>

#include "nfvsim/errors.hpp"

namespace nfvsim {

const char* to_string(Builder b) {
    switch (b) {
        case Builder::ss: return "ss";
        case Builder::rpt: return "rpt";
        case Builder::prl: return "prl";
        case Builder::spc: return "spc";
        case Builder::nfv: return "nfv";
        case Builder::custom: return "custom";
    }
    return "?";
}

Builder builder_from_string(const std::string& name) {
    if (name == "ss") return Builder::ss;
    if (name == "rpt") return Builder::rpt;
    if (name == "prl") return Builder::prl;
    if (name == "spc") return Builder::spc;
    if (name == "nfv") return Builder::nfv;
    if (name == "custom") return Builder::custom;
    throw ConfigError("unknown scheme builder '" + name +
                      "' (expected ss | rpt | prl | spc | nfv | custom)");
}

const GeneratorMatrix& nfv_reference_matrix() {
    static const GeneratorMatrix code = make_generator_matrix(4, 8, 2,
                                                              {1, 0, 0, 0, 1, 0, 0, 1,
                                                               0, 1, 0, 0, 1, 1, 0, 0,
                                                               0, 0, 1, 0, 0, 1, 1, 0,
                                                               0, 0, 0, 1, 0, 0, 1, 1});
    return code;
}

namespace {

GeneratorMatrix base_matrix(const SchemeSpec& spec) {
    switch (spec.builder) {
        case Builder::ss:
            return make_generator_matrix(1, 1, spec.p_prime, {1});
        case Builder::rpt: {
            if (spec.N < 1) throw ConfigError("scheme '" + spec.name + "': N must be >= 1");
            return make_generator_matrix(1, spec.N, spec.p_prime,
                                         std::vector<int>(spec.N, 1));
        }
        case Builder::prl: {
            if (spec.N < 1) throw ConfigError("scheme '" + spec.name + "': N must be >= 1");
            std::vector<int> e(std::size_t(spec.N) * spec.N, 0);
            for (int i = 0; i < spec.N; ++i) e[std::size_t(i) * spec.N + i] = 1;
            return make_generator_matrix(spec.N, spec.N, spec.p_prime, std::move(e));
        }
        case Builder::spc: {
            if (spec.N < 2) throw ConfigError("scheme '" + spec.name + "': spc needs N >= 2");
            const int K = spec.N - 1;
            std::vector<int> e(std::size_t(K) * spec.N, 0);
            for (int i = 0; i < K; ++i) {
                e[std::size_t(i) * spec.N + i] = 1;
                e[std::size_t(i) * spec.N + spec.N - 1] = 1;
            }
            return make_generator_matrix(K, spec.N, spec.p_prime, std::move(e));
        }
        case Builder::nfv: {
            if (spec.N != 8)
                throw ConfigError("scheme '" + spec.name + "': the bundled nfv code has N = 8");
            if (spec.p_prime != 2)
                throw ConfigError("scheme '" + spec.name + "': the bundled nfv code is binary");
            return nfv_reference_matrix();
        }
        case Builder::custom: {
            // A custom matrix (inline or from file) carries its own p_prime.
            if (spec.custom_matrix) {
                GeneratorMatrix code = *spec.custom_matrix;
                validate_generator_matrix(code);
                return code;
            }
            if (!spec.custom_path)
                throw ConfigError("scheme '" + spec.name +
                                  "': custom builder needs a scheme file path or inline matrix");
            return load_scheme_file(*spec.custom_path);
        }
    }
    throw ConfigError("scheme '" + spec.name + "': unknown builder");
}

}  // namespace

BuiltScheme build(const SchemeSpec& spec, const FrameParams& frame) {
    if (spec.name.empty()) throw ConfigError("scheme: name must be non-empty");
    const double L = spec.L > 0 ? spec.L : frame.L;
    if (!(L > 0)) throw ConfigError("scheme '" + spec.name + "': L must be > 0");
    if (!(frame.R > 0)) throw ConfigError("scheme '" + spec.name + "': R must be > 0");
    if (spec.scale < 1) throw ConfigError("scheme '" + spec.name + "': scale must be >= 1");

    GeneratorMatrix code = base_matrix(spec);
    if (spec.scale != 1) {
        if (spec.scale >= code.p_prime)
            throw ConfigError("scheme '" + spec.name + "': scale " + std::to_string(spec.scale) +
                              " must be < p_prime " + std::to_string(code.p_prime));
        for (auto& e : code.entries) {
            e *= spec.scale;
            if (e >= code.p_prime)
                throw ConfigError("scheme '" + spec.name +
                                  "': scaled entry leaves the field range");
        }
        validate_generator_matrix(code);
    }

    const int K = code.K;
    if (std::fmod(L, double(K)) != 0.0)
        throw ConfigError("scheme '" + spec.name + "': L = " + std::to_string(L) +
                          " is not divisible by K = " + std::to_string(K));
    const double k = L / K;
    const double n_real = k * std::log2(double(frame.p)) / frame.R;
    const int n = int(std::llround(n_real));
    if (n < 1 || std::abs(n_real - n) > 1e-9)
        throw ConfigError("scheme '" + spec.name + "': block length k*log2(p)/R = " +
                          std::to_string(n_real) + " is not a positive integer");

    BuiltScheme out;
    out.name = spec.name;
    out.code = std::move(code);
    out.n = n;
    out.K = K;
    out.nfv_standin = spec.builder == Builder::nfv;
    return out;
}

}  // namespace nfvsim
