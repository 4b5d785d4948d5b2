#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "adhmkit/adhm.hpp"
#include "adhmkit/counting.hpp"
#include "adhmkit/current.hpp"
#include "adhmkit/hilbert.hpp"
#include "adhmkit/ratfunc.hpp"

namespace adhm {
namespace io {

using nlohmann::json;

// Matrices: {"rows": r, "cols": c, "entries": ["p/q", ...]} row-major.
inline json to_json(const Matrix<Rational>& m)
{
    json entries = json::array();
    for (const auto& e : m.entries())
        entries.push_back(e.str());
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline Matrix<Rational> matrix_from_json(const json& j)
{
    require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries"),
            ErrorKind::Parse, "matrix needs rows/cols/entries");
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    require(entries.is_array() && entries.size() == rows * cols, ErrorKind::Parse,
            "entry count mismatch");
    std::vector<Rational> v;
    v.reserve(rows * cols);
    for (const auto& e : entries) {
        if (e.is_number_integer())
            v.push_back(Rational(e.get<long>()));
        else
            v.push_back(Rational::parse(e.get<std::string>()));
    }
    return Matrix<Rational>(rows, cols, std::move(v));
}

// Rational functions: {"num": [c0, c1, ...], "den": [...]}, constants as
// "p/q" strings.
inline json to_json(const RatFunc& f)
{
    auto poly = [](const Poly<Rational>& p) {
        json arr = json::array();
        for (const auto& c : p.coeffs())
            arr.push_back(c.str());
        return arr;
    };
    return json{{"num", poly(f.num())}, {"den", poly(f.den())}};
}

inline json to_json(const BilinearForm<Rational>& f)
{
    return json{{"kind", f.kind == FormKind::Symmetric ? "symmetric" : "alternating"},
                {"gram", to_json(f.gram)}};
}

inline BilinearForm<Rational> form_from_json(const json& j)
{
    require(j.is_object() && j.contains("kind") && j.contains("gram"), ErrorKind::Parse,
            "form needs kind/gram");
    std::string kind = j.at("kind").get<std::string>();
    BilinearForm<Rational> f;
    if (kind == "symmetric")
        f.kind = FormKind::Symmetric;
    else if (kind == "alternating")
        f.kind = FormKind::Alternating;
    else
        raise(ErrorKind::Parse, "unknown form kind '" + kind + "'");
    f.gram = matrix_from_json(j.at("gram"));
    return f;
}

// Datum schema: {"dimV": k, "dimW": n, "B1": M, "B2": M, "i": M,
// "j": M?, "formV": F?, "formW": F?}; j omitted means framed data with
// j = i* derived from the forms.
struct ParsedDatum {
    AdhmDatum<Rational> datum;
    bool framed = false;
    BilinearForm<Rational> form_v, form_w;

    SoDatum<Rational> framed_datum() const
    {
        require(framed, ErrorKind::Parse, "datum carries no forms");
        return SoDatum<Rational>{datum, form_v, form_w};
    }
};

inline ParsedDatum datum_from_json(const json& j)
{
    require(j.is_object(), ErrorKind::Parse, "datum must be an object");
    ParsedDatum out;
    std::size_t k = j.at("dimV").get<std::size_t>();
    std::size_t n = j.at("dimW").get<std::size_t>();
    out.datum.b1 = matrix_from_json(j.at("B1"));
    out.datum.b2 = matrix_from_json(j.at("B2"));
    out.datum.i = matrix_from_json(j.at("i"));
    bool has_forms = j.contains("formV") && j.contains("formW");
    if (has_forms) {
        out.form_v = form_from_json(j.at("formV"));
        out.form_w = form_from_json(j.at("formW"));
        out.framed = true;
    }
    if (j.contains("j"))
        out.datum.j = matrix_from_json(j.at("j"));
    else {
        require(has_forms, ErrorKind::Parse, "j omitted but no forms given");
        out.datum.j = adjoint_hom(out.datum.i, out.form_w, out.form_v);
    }
    require(out.datum.dim_v() == k && out.datum.dim_w() == n, ErrorKind::Parse,
            "dimV/dimW do not match the matrices");
    out.datum.validate_shapes();
    return out;
}

inline json to_json(const AdhmDatum<Rational>& x)
{
    return json{{"dimV", x.dim_v()}, {"dimW", x.dim_w()}, {"B1", to_json(x.b1)},
                {"B2", to_json(x.b2)}, {"i", to_json(x.i)}, {"j", to_json(x.j)}};
}

inline json to_json(const SoDatum<Rational>& y)
{
    json j = json{{"dimV", y.dim_v()},          {"dimW", y.dim_w()},
                  {"B1", to_json(y.datum.b1)},  {"B2", to_json(y.datum.b2)},
                  {"i", to_json(y.datum.i)},    {"formV", to_json(y.form_v)},
                  {"formW", to_json(y.form_w)}};
    return j;
}

// CurrentVec: {"d": D, "coeffs": [[a, b], ...]} with rational strings or
// numbers.
inline current::CurrentVec<Rational> current_vec_from_json(const json& j)
{
    require(j.is_object() && j.contains("d") && j.contains("coeffs"), ErrorKind::Parse,
            "current vector needs d/coeffs");
    int d = j.at("d").get<int>();
    auto v = current::CurrentVec<Rational>::zero(d);
    const auto& cs = j.at("coeffs");
    require(cs.is_array() && static_cast<int>(cs.size()) == d + 1, ErrorKind::Parse,
            "coefficient count must be d+1");
    for (int m = 0; m <= d; ++m) {
        const auto& pair = cs.at(static_cast<std::size_t>(m));
        require(pair.is_array() && pair.size() == 2, ErrorKind::Parse, "coeffs are [a, b] pairs");
        for (int c = 0; c < 2; ++c) {
            const auto& e = pair.at(static_cast<std::size_t>(c));
            Rational val = e.is_number_integer() ? Rational(e.get<long>())
                                                 : Rational::parse(e.get<std::string>());
            v.coeffs[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)] = val;
        }
    }
    return v;
}

inline json to_json(const count::CountReport& r)
{
    json j{{"kind", r.kind},
           {"parameter", r.parameter},
           {"prime", r.prime},
           {"count", r.count},
           {"log_p_count", r.log_p_count},
           {"predicted_dim", r.predicted_dim},
           {"elapsed_seconds", r.elapsed_seconds},
           {"workers", r.workers}};
    if (r.sub_parameter >= 0)
        j["n"] = r.sub_parameter;
    if (r.kind == "mux")
        j["set_equality"] = r.set_equality;
    return j;
}

inline json to_json(const hilbert::TruncSeries& s)
{
    json orders = json::array();
    for (int k = 0; k <= s.trunc(); ++k) {
        json terms = json::array();
        for (const auto& [key, v] : s.at(k).terms())
            terms.push_back(json{{"t", key.first}, {"z", key.second}, {"coeff", v}});
        orders.push_back(terms);
    }
    return json{{"trunc", s.trunc()}, {"pretty", s.str()}, {"coefficients", orders}};
}

inline json load_file(const std::string& path)
{
    std::ifstream in(path);
    require(in.good(), ErrorKind::Parse, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        raise(ErrorKind::Parse, std::string("bad JSON: ") + e.what());
    }
    return j;
}

// FNV-1a of a file's bytes, for provenance records.
inline std::string file_fingerprint(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::Parse, "cannot open " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace io
} // namespace adhm
