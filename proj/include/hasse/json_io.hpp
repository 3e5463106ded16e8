#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "hasse/exterior.hpp"
#include "hasse/identities.hpp"
#include "hasse/matrix.hpp"
#include "hasse/traces.hpp"

namespace hasse {

using ordered_json = nlohmann::ordered_json;

/// Malformed external input (bad JSON shape or scalar literal).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Rationals travel as "p/q" strings so no float contamination can occur;
// float mode uses plain JSON numbers.
template <class K>
ordered_json scalar_to_json(const K& x) {
    if constexpr (std::is_floating_point_v<K>) {
        return x;
    } else {
        return x.str();
    }
}

template <class K>
K scalar_from_json(const ordered_json& j) {
    if (j.is_string()) {
        try {
            return parse_scalar<K>(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if constexpr (std::is_floating_point_v<K>) {
        if (j.is_number()) return j.get<double>();
    } else {
        if (j.is_number_integer()) return K(j.get<long>());
        if (j.is_number()) throw ParseError("rational mode requires quoted \"p/q\" entries");
    }
    throw ParseError("scalar entry must be a string or number");
}

template <class K>
ordered_json matrix_to_json(const Matrix<K>& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class K>
Matrix<K> matrix_from_json(const ordered_json& j, int n) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    if (static_cast<int>(j.size()) != n)
        throw std::invalid_argument("matrix row count does not match n");
    Matrix<K> m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("matrix row length does not match n");
        for (int k = 0; k < n; ++k) m.at(i, k) = scalar_from_json<K>(row[k]);
    }
    return m;
}

template <class K>
ordered_json element_to_json(const ExteriorElement<K>& u) {
    ordered_json terms = ordered_json::array();
    for (const auto& [b, c] : u.terms()) {
        ordered_json t;
        t["blade"] = b.indices();
        t["coeff"] = scalar_to_json(c);
        terms.push_back(std::move(t));
    }
    ordered_json j;
    j["n"] = u.dimension();
    j["terms"] = std::move(terms);
    return j;
}

template <class K>
ExteriorElement<K> element_from_json(const ordered_json& j) {
    if (!j.contains("n") || !j.contains("terms")) throw ParseError("element needs \"n\" and \"terms\"");
    const int n = j.at("n").get<int>();
    ExteriorElement<K> u(n);
    for (const auto& t : j.at("terms")) {
        const auto idx = t.at("blade").get<std::vector<int>>();
        u.add_term(Blade::from_indices(idx, n), scalar_from_json<K>(t.at("coeff")));
    }
    return u;
}

/// Dense listing: every index of degree <= n appears, zeros included.
template <class K>
ordered_json tensor_to_json(const TraceTensor<K>& tau) {
    ordered_json entries = ordered_json::array();
    for (const auto& i : indices_up_to_degree(tau.vars(), tau.dimension())) {
        ordered_json e;
        e["index"] = i.exponents();
        e["value"] = scalar_to_json(tau.entry(i));
        entries.push_back(std::move(e));
    }
    ordered_json j;
    j["n"] = tau.dimension();
    j["entries"] = std::move(entries);
    return j;
}

template <class K>
TraceTensor<K> tensor_from_json(const ordered_json& j) {
    if (!j.contains("n") || !j.contains("entries")) throw ParseError("tensor needs \"n\" and \"entries\"");
    const int n = j.at("n").get<int>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.empty()) throw ParseError("tensor entries must be a non-empty array");
    const int vars = static_cast<int>(entries[0].at("index").get<std::vector<int>>().size());
    TraceTensor<K> tau(n, vars);
    for (const auto& e : entries) {
        MultiIndex i(e.at("index").get<std::vector<int>>());
        tau.set_entry(i, scalar_from_json<K>(e.at("value")));
    }
    return tau;
}

template <class K>
ordered_json report_to_json(const IdentityReport<K>& r,
                            std::optional<std::uint64_t> seed = std::nullopt) {
    ordered_json j;
    j["identity"] = r.identity;
    j["n"] = r.n;
    j["is_zero"] = r.is_zero;
    j["residual"] = matrix_to_json(r.residual);
    if constexpr (std::is_floating_point_v<K>) {
        j["max_abs"] = r.max_abs;
        j["scale"] = r.scale;
    }
    if (seed) j["seed"] = *seed;
    return j;
}

enum class ScalarMode { rational, floating };

inline std::string mode_name(ScalarMode m) { return m == ScalarMode::rational ? "rational" : "float"; }

/**
 * External input document: dimension, scalar mode, the matrices, and an
 * optional seed. The matrix list may be empty when a seed is present (the
 * consumer generates the tuple). Matrix count requirements are per-command
 * and validated there; sizes are always n x n.
 */
struct InputDocument {
    int n = 0;
    ScalarMode mode = ScalarMode::rational;
    std::optional<std::uint64_t> seed;
    ordered_json matrices = ordered_json::array();

    int matrix_count() const { return static_cast<int>(matrices.size()); }

    template <class K>
    std::vector<Matrix<K>> parse_matrices() const {
        std::vector<Matrix<K>> out;
        out.reserve(matrices.size());
        for (const auto& m : matrices) out.push_back(matrix_from_json<K>(m, n));
        return out;
    }
};

inline InputDocument input_document_from_json(const ordered_json& j) {
    InputDocument doc;
    if (!j.is_object() || !j.contains("n")) throw ParseError("input document needs \"n\"");
    if (!j.at("n").is_number_integer()) throw ParseError("\"n\" must be an integer");
    doc.n = j.at("n").get<int>();
    if (doc.n < 1) throw ParseError("\"n\" must be positive");
    if (j.contains("mode")) {
        const std::string m = j.at("mode").get<std::string>();
        if (m == "rational")
            doc.mode = ScalarMode::rational;
        else if (m == "float")
            doc.mode = ScalarMode::floating;
        else
            throw ParseError("mode must be \"rational\" or \"float\"");
    }
    if (j.contains("seed")) doc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("matrices")) {
        if (!j.at("matrices").is_array()) throw ParseError("\"matrices\" must be an array");
        doc.matrices = j.at("matrices");
    }
    if (doc.matrices.empty() && !doc.seed)
        throw ParseError("input document needs \"matrices\" or a \"seed\" to generate them");
    return doc;
}

inline InputDocument parse_input_document(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return input_document_from_json(j);
}

}  // namespace hasse
