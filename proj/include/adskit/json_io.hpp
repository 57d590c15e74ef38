// JSON encodings for the CLI surface: group elements, factorization results,
// point lists, and action value tables.
//
// Exact data never passes through floating point: rationals are encoded as
// canonical "p" / "p/q" strings, and a group element carries an explicit
// "mode" of "exact" or "float".  Malformed input raises JsonError; the CLI
// maps that to its invalid-input exit code.

#pragma once

#include <adskit/decomp.hpp>
#include <adskit/matrix.hpp>
#include <adskit/rational.hpp>

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adskit {

using nlohmann::json;

class JsonError : public std::runtime_error {
  public:
    explicit JsonError(const std::string& what) : std::runtime_error(what) {}
};

// --- scalar and matrix encodings -------------------------------------------

inline json rat_json(const Rat& r) { return rat_str(r); }

inline Rat rat_from_json(const json& j, const char* where) {
    if (j.is_string()) {
        const auto r = rat_parse(j.get<std::string>());
        if (!r) throw JsonError(std::string(where) + ": malformed rational '" +
                                j.get<std::string>() + "'");
        return *r;
    }
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw JsonError(std::string(where) + ": expected a rational string");
}

inline json matrix_json(const Mat<Rat>& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.size(); ++k) row.push_back(rat_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json matrix_json(const Mat<double>& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.size(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json vector_json(const std::vector<Rat>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(rat_json(e));
    return a;
}

inline json vector_json(const std::vector<double>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(e);
    return a;
}

// --- group elements ----------------------------------------------------------

// Either an exact rational matrix or a float one, tagged by mode.
struct GroupElementData {
    int q = 2;
    bool exact = true;
    Mat<Rat> rational{2};
    Mat<double> floating{2};
};

inline json group_element_json(int q, const Mat<Rat>& g) {
    return json{{"q", q}, {"mode", "exact"}, {"entries", matrix_json(g)}};
}

inline json group_element_json(int q, const Mat<double>& g) {
    return json{{"q", q}, {"mode", "float"}, {"entries", matrix_json(g)}};
}

inline GroupElementData group_element_from_json(const json& j) {
    if (!j.is_object()) throw JsonError("group element: expected a JSON object");
    if (!j.contains("q") || !j["q"].is_number_integer())
        throw JsonError("group element: missing integer field 'q'");
    if (!j.contains("mode") || !j["mode"].is_string())
        throw JsonError("group element: missing string field 'mode'");
    if (!j.contains("entries") || !j["entries"].is_array())
        throw JsonError("group element: missing array field 'entries'");

    GroupElementData out;
    out.q = j["q"].get<int>();
    if (out.q < 1) throw JsonError("group element: q must be >= 1");
    const std::string mode = j["mode"].get<std::string>();
    if (mode != "exact" && mode != "float")
        throw JsonError("group element: mode must be 'exact' or 'float'");
    out.exact = mode == "exact";

    const int n = out.q + 2;
    const json& rows = j["entries"];
    if (static_cast<int>(rows.size()) != n)
        throw JsonError("group element: entries must be a (q+2) x (q+2) matrix");
    out.rational = Mat<Rat>(n);
    out.floating = Mat<double>(n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
            throw JsonError("group element: entries must be a (q+2) x (q+2) matrix");
        for (int k = 0; k < n; ++k) {
            const json& cell = rows[i][k];
            if (out.exact) {
                out.rational(i, k) = rat_from_json(cell, "group element");
                out.floating(i, k) = rat_double(out.rational(i, k));
            } else {
                if (!cell.is_number())
                    throw JsonError("group element: float mode entries must be numbers");
                out.floating(i, k) = cell.get<double>();
            }
        }
    }
    return out;
}

// Group membership with the mode's native arithmetic.  Exact elements are
// checked with zero tolerance.
inline void require_in_group(const GroupElementData& g, double float_tol,
                             const char* where) {
    const bool ok = g.exact ? is_in_group(g.q, g.rational)
                            : is_in_group(g.q, g.floating, float_tol);
    if (!ok) throw JsonError(std::string(where) + ": matrix is not in the group");
}

// --- point lists --------------------------------------------------------------

// Evaluation points: a JSON array of rows (or an object with a "points"
// field).  String entries are exact rationals; fractional numbers force
// float mode for the whole list.
struct PointsData {
    bool exact = true;
    std::vector<std::vector<Rat>> rational;     // filled when exact
    std::vector<std::vector<double>> floating;  // always filled
};

inline PointsData points_from_json(const json& j, int expected_len) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("points") || !j["points"].is_array())
            throw JsonError("points: expected an array or an object with 'points'");
        arr = &j["points"];
    } else if (!j.is_array()) {
        throw JsonError("points: expected an array or an object with 'points'");
    }

    PointsData out;
    for (const json& row : *arr) {
        if (!row.is_array() || static_cast<int>(row.size()) != expected_len)
            throw JsonError("points: each point needs exactly " +
                            std::to_string(expected_len) + " coordinates");
        std::vector<Rat> rrow;
        std::vector<double> frow;
        for (const json& cell : row) {
            if (cell.is_string() || cell.is_number_integer()) {
                const Rat r = rat_from_json(cell, "points");
                rrow.push_back(r);
                frow.push_back(rat_double(r));
            } else if (cell.is_number()) {
                out.exact = false;
                frow.push_back(cell.get<double>());
            } else {
                throw JsonError("points: entries must be rational strings or numbers");
            }
        }
        if (out.exact) out.rational.push_back(std::move(rrow));
        out.floating.push_back(std::move(frow));
    }
    if (!out.exact) out.rational.clear();
    return out;
}

// --- factorization results -----------------------------------------------------

template <class T>
json factorization_json(int q, const std::string& chart,
                        const std::optional<SekiguchiFactors<T>>& f) {
    json out{{"schema", 1}, {"q", q}, {"chart", chart}, {"in_cell", f.has_value()}};
    if (f) {
        out["x"] = vector_json(f->point.x);
        out["y"] = [&] {
            if constexpr (std::is_same_v<T, Rat>) return rat_json(f->point.y);
            else return json(f->point.y);
        }();
        out["sign"] = f->sign;
        out["residual_h"] = matrix_json(f->h);
    }
    return out;
}

template <class T>
json factorization_json(int q, const std::string& chart,
                        const std::optional<BruhatFactors<T>>& f) {
    json out{{"schema", 1}, {"q", q}, {"chart", chart}, {"in_cell", f.has_value()}};
    if (f) {
        out["x"] = vector_json(f->point.x);
        out["y"] = [&] {
            if constexpr (std::is_same_v<T, Rat>) return rat_json(f->point.y);
            else return json(f->point.y);
        }();
        out["residual_m"] = matrix_json(f->m);
        out["residual_t"] = vector_json(f->t);
    }
    return out;
}

}  // namespace adskit
