// JSON encodings for every file format the CLI speaks. Complex numbers are
// always [re, im] arrays.

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqft/ensemble.hpp"
#include "pqft/qft.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
    static void to_json(json& j, const std::complex<double>& z) { j = json::array({z.real(), z.imag()}); }

    static void from_json(const json& j, std::complex<double>& z) {
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            throw std::invalid_argument("complex values must be [re, im] arrays");
        z = std::complex<double>(j[0].get<double>(), j[1].get<double>());
    }
};

}  // namespace nlohmann

namespace pqft {

using Json = nlohmann::json;

inline void to_json(Json& j, const MultiplicityVector& v) { j = v.counts; }

inline void from_json(const Json& j, MultiplicityVector& v) {
    v.counts = j.get<std::vector<int>>();
    for (int c : v.counts)
        if (c < 0) throw std::invalid_argument("multiplicity counts must be non-negative");
}

inline void to_json(Json& j, const SequencePolynomial& poly) {
    j = Json::array();
    for (const auto& [v, c] : poly.terms()) j.push_back(Json{{"mult", v}, {"coeff", c}});
}

inline void from_json(const Json& j, SequencePolynomial& poly) {
    poly = SequencePolynomial();
    for (const auto& item : j) {
        auto v = item.at("mult").get<MultiplicityVector>();
        auto c = item.at("coeff").get<Complex>();
        poly += SequencePolynomial::term(std::move(v), c);
    }
}

inline void to_json(Json& j, const FieldState& field) { j = Json{{"alpha", field.alpha}, {"beta", field.beta}}; }

inline void from_json(const Json& j, FieldState& field) {
    field.alpha = j.at("alpha").get<SequencePolynomial>();
    field.beta = j.at("beta").get<SequencePolynomial>();
}

inline void to_json(Json& j, const ReducedState& state) { j = Json{{"n", state.n}, {"amps", state.amps}}; }

inline void from_json(const Json& j, ReducedState& state) {
    state.n = j.at("n").get<int>();
    state.amps = j.at("amps").get<std::vector<Complex>>();
}

inline Json family_to_json(const SequenceFamily& family) {
    Json phases = Json::object();
    for (int id : family.base_ids()) phases[std::to_string(id)] = family.numerators(id);
    return Json{{"kind", to_string(family.kind())},
                {"M", family.slot_count()},
                {"p", family.alphabet_modulus()},
                {"base_ids", family.base_ids()},
                {"denominator", family.denominator()},
                {"phases", phases}};
}

/// Rebuilds a family from its export and cross-checks every stored phase
/// table against the reconstruction.
inline SequenceFamily family_from_json(const Json& j) {
    const auto kind = j.at("kind").get<std::string>();
    const int M = j.at("M").get<int>();
    const int p = j.at("p").get<int>();
    const auto base_ids = j.at("base_ids").get<std::vector<int>>();
    const int den = j.at("denominator").get<int>();
    const auto& phases = j.at("phases");

    auto check_tables = [&](const SequenceFamily& family) {
        for (int id : family.base_ids()) {
            const auto stored = phases.at(std::to_string(id)).get<std::vector<int>>();
            if (stored != family.numerators(id))
                throw std::invalid_argument("family import: stored phases do not match the construction");
        }
        return family;
    };

    if (kind == "fourier") {
        if (p != M || den != M) throw std::invalid_argument("family import: fourier requires p == denominator == M");
        return check_tables(make_fourier_family(M, base_ids));
    }
    if (kind == "mseq") {
        if (den != p) throw std::invalid_argument("family import: mseq requires denominator == p");
        if (base_ids.empty()) throw std::invalid_argument("family import: mseq needs at least one base id");
        const int first = base_ids.front();
        const auto stored = phases.at(std::to_string(first)).get<std::vector<int>>();
        if (static_cast<int>(stored.size()) != M)
            throw std::invalid_argument("family import: phase table length does not match M");
        // numerators(shift)[k] = s_{(k+shift) mod M}  =>  s_t = stored[(t - shift) mod M]
        std::vector<int> symbols(static_cast<std::size_t>(M));
        for (int t = 0; t < M; ++t)
            symbols[static_cast<std::size_t>(t)] = stored[static_cast<std::size_t>(((t - first) % M + M) % M)];
        return check_tables(make_mseq_family_from_symbols(p, std::move(symbols), base_ids));
    }
    throw std::invalid_argument("family import: unknown kind '" + kind + "'");
}

inline void to_json(Json& j, const GateCounts& counts) {
    j = Json{{"controlled_phase", counts.controlled_phase},
             {"hadamard", counts.hadamard},
             {"mode_select", counts.mode_select},
             {"correlation", counts.correlation}};
}

inline void to_json(Json& j, const TransformReport& report) {
    j = Json{{"n", report.n},
             {"engine", to_string(report.engine)},
             {"D", report.coefficients},
             {"gate_counts", report.gate_counts},
             {"oracle_residual", report.oracle_residual ? Json(*report.oracle_residual) : Json(nullptr)}};
}

/// A prepared state on disk: the field list plus the family it was prepared
/// against and how it was made.
struct StateFile {
    int n = 0;
    SequenceFamily family;
    std::vector<FieldState> fields;
    std::string kind;  // product | ghz | w | custom
    std::optional<std::uint64_t> seed;

    StateFile() : family(make_fourier_family(2, {1})) {}
    StateFile(int n_, SequenceFamily family_, std::vector<FieldState> fields_, std::string kind_,
              std::optional<std::uint64_t> seed_ = std::nullopt)
        : n(n_), family(std::move(family_)), fields(std::move(fields_)), kind(std::move(kind_)), seed(seed_) {}
};

inline Json state_to_json(const StateFile& state) {
    Json meta{{"kind", state.kind}};
    meta["seed"] = state.seed ? Json(*state.seed) : Json(nullptr);
    return Json{{"n", state.n}, {"family", family_to_json(state.family)}, {"fields", state.fields},
                {"metadata", meta}};
}

inline StateFile state_from_json(const Json& j) {
    StateFile state;
    state.n = j.at("n").get<int>();
    if (state.n < 1 || state.n > 16) throw std::invalid_argument("state import: n must lie in [1, 16]");
    state.family = family_from_json(j.at("family"));
    state.fields = j.at("fields").get<std::vector<FieldState>>();
    const auto& meta = j.at("metadata");
    state.kind = meta.at("kind").get<std::string>();
    if (meta.contains("seed") && !meta.at("seed").is_null())
        state.seed = meta.at("seed").get<std::uint64_t>();

    if (state.family.field_count() != state.n)
        throw std::invalid_argument("state import: family base ids do not match n");
    if (static_cast<int>(state.fields.size()) != state.n)
        throw std::invalid_argument("state import: field count does not match n");
    for (const auto& field : state.fields) {
        if (field.alpha.is_zero() && field.beta.is_zero())
            throw std::invalid_argument("state import: field with both amplitudes zero");
        const int len = detail::field_vector_length(field);
        if (len >= 0 && len != state.n)
            throw std::invalid_argument("state import: field multiplicity length does not match n");
    }
    return state;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return Json::parse(in);
}

}  // namespace pqft
