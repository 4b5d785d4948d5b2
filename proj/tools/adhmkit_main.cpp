// Command-line front end: datum verification, product pipelines, the
// invariant-series computation, current-algebra queries, and the
// finite-field fiber counts. Every command emits a JSON envelope
// {status, payload, provenance}; identical inputs and seeds give identical
// payloads.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adhmkit/counting.hpp"
#include "adhmkit/hilbert.hpp"
#include "adhmkit/json_io.hpp"
#include "adhmkit/products.hpp"
#include "adhmkit/version.hpp"

using namespace adhm;
using adhm::io::json;

namespace {

struct Output {
    bool pretty = false;

    int ok(json payload, json provenance) const
    {
        json env{{"status", "ok"}, {"payload", std::move(payload)},
                 {"provenance", std::move(provenance)}};
        std::cout << (pretty ? env.dump(2) : env.dump()) << "\n";
        return 0;
    }
    int fail(const std::string& kind, const std::string& message, json provenance) const
    {
        json env{{"status", "error"}, {"error", {{"kind", kind}, {"message", message}}},
                 {"provenance", std::move(provenance)}};
        std::cout << (pretty ? env.dump(2) : env.dump()) << "\n";
        return 1;
    }
};

json provenance_for(const std::vector<std::string>& paths, std::uint64_t seed)
{
    json inputs = json::array();
    for (const auto& p : paths)
        inputs.push_back(json{{"path", p}, {"fnv1a", io::file_fingerprint(p)}});
    return json{{"inputs", inputs}, {"seed", seed}, {"version", ADHMKIT_VERSION}};
}

json verification_block(const AdhmDatum<Rational>& x)
{
    Matrix<Rational> mu = moment_map_gl(x);
    return json{{"moment_map", io::to_json(mu)},
                {"moment_zero", mu.is_zero()},
                {"stable", is_stable(x)},
                {"costable", is_costable(x)},
                {"regular", is_regular(x)}};
}

json so_verification_block(const SoDatum<Rational>& y)
{
    json j = verification_block(y.datum);
    j["framed_invariants"] = y.invariants_hold();
    return j;
}

int cmd_verify(const std::string& path, const Output& out)
{
    json prov = provenance_for({path}, 0);
    json payload;
    io::ParsedDatum parsed;
    try {
        parsed = io::datum_from_json(io::load_file(path));
    } catch (const Error& e) {
        return out.fail(error_kind_name(e.kind()), e.what(), prov);
    }
    payload["dimV"] = parsed.datum.dim_v();
    payload["dimW"] = parsed.datum.dim_w();
    payload["framed"] = parsed.framed;
    payload.update(verification_block(parsed.datum));
    if (parsed.framed) {
        SoDatum<Rational> y = parsed.framed_datum();
        payload["framed_invariants"] = y.invariants_hold();
        if (y.invariants_hold())
            payload["moment_in_sp"] = true;
    }
    try {
        auto spec = b1_spectrum(parsed.datum);
        json eig = json::array();
        for (const auto& [v, m] : spec.eigenvalues)
            eig.push_back(json{{"value", v.str()}, {"multiplicity", m}});
        payload["b1_spectrum"] = json{{"split", spec.split}, {"distinct", spec.distinct},
                                      {"eigenvalues", eig}};
    } catch (const Error&) {
        payload["b1_spectrum"] = json{{"split", false}};
    }
    return out.ok(payload, prov);
}

int cmd_product(const std::string& verb, const std::vector<std::string>& paths,
                std::uint64_t seed, const std::string& out_path, const Output& out)
{
    json prov = provenance_for(paths, seed);
    try {
        std::vector<io::ParsedDatum> inputs;
        for (const auto& p : paths)
            inputs.push_back(io::datum_from_json(io::load_file(p)));

        json payload;
        auto emit_plain = [&](const AdhmDatum<Rational>& d) {
            payload["output"] = io::to_json(d);
            payload["verification"] = verification_block(d);
        };
        auto emit_framed = [&](const SoDatum<Rational>& y) {
            payload["output"] = io::to_json(y);
            payload["verification"] = so_verification_block(y);
            payload["verification"]["moment_in_sp"] = true; // validated on construction
        };

        if (verb == "tensor") {
            require(inputs.size() == 2, ErrorKind::Parse, "tensor needs two inputs");
            auto t = tensor(inputs[0].datum, inputs[1].datum);
            emit_plain(t);
            payload["verification"]["dual_compatible"] =
                tensor_dual_check(inputs[0].datum, inputs[1].datum);
        } else if (verb == "self-tensor") {
            require(inputs.size() == 1, ErrorKind::Parse, "self-tensor needs one input");
            SelfTensorResult r = inputs[0].framed ? self_tensor(inputs[0].framed_datum())
                                                  : self_tensor(inputs[0].datum);
            emit_plain(r.datum);
            payload["frame"] = json{{"eigenvalues", json::array()}};
            for (const auto& ev : r.frame.eigenvalues)
                payload["frame"]["eigenvalues"].push_back(ev.str());
            payload["verification"]["reconstructs"] = reconstructs_from_restrictions(r);
        } else if (verb == "sym" || verb == "ext") {
            require(inputs.size() == 1, ErrorKind::Parse, "sym/ext need one input");
            SelfTensorResult r = inputs[0].framed ? self_tensor(inputs[0].framed_datum())
                                                  : self_tensor(inputs[0].datum);
            emit_plain(verb == "sym" ? restrict_sym(r) : restrict_ext(r));
        } else if (verb == "so3") {
            require(inputs.size() == 1 && inputs[0].framed, ErrorKind::Parse,
                    "so3 needs one framed input");
            emit_framed(iso_so3(inputs[0].framed_datum()));
        } else if (verb == "so5") {
            require(inputs.size() == 1 && inputs[0].framed, ErrorKind::Parse,
                    "so5 needs one framed input");
            emit_framed(iso_so5(inputs[0].framed_datum()));
        } else if (verb == "so6") {
            require(inputs.size() == 1, ErrorKind::Parse, "so6 needs one input");
            So6Result res = inputs[0].framed ? iso_so6(inputs[0].framed_datum(), seed)
                                             : iso_so6(inputs[0].datum, seed);
            emit_framed(res.output);
            payload["omega"] = io::to_json(res.omega);
            payload["omega_pfaffian"] = res.pfaffian.str();
            payload["attempts"] = res.attempts;
        } else {
            return out.fail("Parse", "unknown verb '" + verb + "'", prov);
        }

        bool all_ok = true;
        for (const auto& [key, val] : payload["verification"].items()) {
            (void)key;
            if (val.is_boolean() && !val.get<bool>() &&
                (key == "moment_zero" || key == "regular" || key == "framed_invariants"))
                all_ok = false;
        }
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << payload["output"].dump(2) << "\n";
        }
        int rc = out.ok(payload, prov);
        return all_ok ? rc : 1;
    } catch (const Error& e) {
        return out.fail(error_kind_name(e.kind()), e.what(), prov);
    }
}

int cmd_hilbert(int trunc, int oracle_depth, const Output& out)
{
    json prov = provenance_for({}, 0);
    try {
        auto series = hilbert::hilbert_rho(trunc);
        json payload{{"series", io::to_json(series)}};
        std::string pretty = series.str();
        payload["pretty"] = pretty;
        bool match = true;
        if (oracle_depth >= 0) {
            auto rep = hilbert::invariants_oracle(oracle_depth);
            json degrees = json::array();
            for (int d = 0; d < static_cast<int>(rep.characters.size()); ++d) {
                bool deg_match = d <= trunc && rep.characters[d] == series.at(d);
                match = match && deg_match;
                degrees.push_back(json{{"degree", d},
                                       {"character", rep.characters[d].str()},
                                       {"matches_series", deg_match}});
            }
            payload["oracle"] = degrees;
            payload["oracle_matches"] = match;
        }
        if (!out.pretty)
            std::cerr << pretty << "\n";
        int rc = out.ok(payload, prov);
        return match ? rc : 1;
    } catch (const Error& e) {
        return out.fail(error_kind_name(e.kind()), e.what(), prov);
    }
}

current::CurrentVec<Rational> parse_x_spec(const std::string& spec, int d)
{
    using CV = current::CurrentVec<Rational>;
    if (spec == "0")
        return CV::zero(d);
    if (spec == "e1")
        return CV::basis(d, 0, 0);
    if (spec == "e2")
        return CV::basis(d, 1, 0);
    // "e1z^N" / "e2z^N"
    if (spec.rfind("e1z^", 0) == 0)
        return CV::basis(d, 0, std::stoi(spec.substr(4)));
    if (spec.rfind("e2z^", 0) == 0)
        return CV::basis(d, 1, std::stoi(spec.substr(4)));
    // Otherwise: inline JSON or a file path.
    json j;
    if (!spec.empty() && spec.front() == '{')
        j = json::parse(spec);
    else
        j = io::load_file(spec);
    auto v = io::current_vec_from_json(j);
    require(v.d == d, ErrorKind::Parse, "--x has a different truncation degree");
    return v;
}

int cmd_current_stabilizer(int d, const std::string& xspec, const Output& out)
{
    json prov = provenance_for({}, 0);
    try {
        auto x = parse_x_spec(xspec, d);
        auto st = current::stabilizer(x);
        json basis = json::array();
        for (const auto& xi : st.basis) {
            json coeffs = json::array();
            for (const auto& c : xi.coeffs)
                coeffs.push_back(json{{"E", c(0, 1).str()}, {"F", c(1, 0).str()},
                                      {"H", c(0, 0).str()}});
            basis.push_back(coeffs);
        }
        std::size_t n = static_cast<std::size_t>(st.min_degree);
        json payload{{"d", d},
                     {"min_degree", st.min_degree},
                     {"dimension", st.dim()},
                     {"expected_dimension", (d + 1 - n) + 3 * n},
                     {"basis", basis}};
        auto strat = current::stratum_data(x);
        payload["orbit_dim"] = strat.orbit_dim;
        payload["stratum_dim"] = strat.stratum_dim;
        return out.ok(payload, prov);
    } catch (const Error& e) {
        return out.fail(error_kind_name(e.kind()), e.what(), prov);
    }
}

int cmd_current_fiber(int d, int n, int check_prime, unsigned workers, const Output& out)
{
    json prov = provenance_for({}, 0);
    try {
        auto fib = current::claimed_fiber<Rational>(d, n);
        json payload{{"d", d}, {"n", n}, {"dimension", fib.dim()},
                     {"basis", io::to_json(fib.basis())}};
        bool ok = true;
        if (check_prime > 0) {
            auto rep = count::count_mux_fiber(d, n, static_cast<std::uint32_t>(check_prime),
                                              workers);
            payload["check"] = io::to_json(rep);
            ok = rep.set_equality;
        }
        int rc = out.ok(payload, prov);
        return ok ? rc : 1;
    } catch (const Error& e) {
        return out.fail(error_kind_name(e.kind()), e.what(), prov);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact-arithmetic toolkit for ADHM-type quiver data"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--pretty", out.pretty, "indent JSON output");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "compact JSON output (default)");

    // verify
    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "check a datum file");
    verify->add_option("path", verify_path, "datum JSON file")->required();

    // product
    std::string verb, out_path;
    std::vector<std::string> product_paths;
    std::uint64_t seed = 0;
    auto* product = app.add_subcommand("product", "tensor/symmetric/exterior pipelines");
    product->add_option("--verb", verb, "tensor|self-tensor|sym|ext|so3|so5|so6")->required();
    product->add_option("paths", product_paths, "input datum files")->required();
    product->add_option("--seed", seed, "seed for randomized choices");
    product->add_option("--out", out_path, "write the output datum to a file");

    // hilbert
    int trunc = 8, oracle_depth = -1;
    auto* hil = app.add_subcommand("hilbert", "invariant series of the quadric fiber ring");
    hil->add_option("--trunc", trunc, "truncation order (>= 3)");
    hil->add_option("--oracle", oracle_depth, "cross-check degrees 0..D by brute force");

    // current
    auto* cur = app.add_subcommand("current", "truncated current-algebra queries");
    cur->require_subcommand(1);
    int cd = 0, cn = 0, check_fp = 0;
    unsigned workers = 1;
    std::string xspec = "e1";
    auto* stab = cur->add_subcommand("stabilizer", "stabilizer basis of x in V_d");
    stab->add_option("--d", cd, "truncation degree")->required();
    stab->add_option("--x", xspec, "e1 | e2 | 0 | e1z^N | e2z^N | JSON");
    auto* fib = cur->add_subcommand("fiber", "claimed moment fiber for x = e1 z^n");
    fib->add_option("--d", cd, "truncation degree")->required();
    fib->add_option("--n", cn, "minimal degree of x")->required();
    fib->add_option("--check-fp", check_fp, "verify set equality over F_p");
    fib->add_option("--workers", workers, "worker threads");

    // count
    auto* cnt = app.add_subcommand("count", "finite-field fiber counts");
    cnt->require_subcommand(1);
    unsigned so3_k = 2;
    int homw_d = 0, mux_d = 0, mux_n = 0, dim_d = 0;
    std::uint32_t prime = 3;
    unsigned cworkers = 1;
    bool allow_long = false;
    std::vector<std::uint32_t> primes{3, 5, 7};
    auto* so3 = cnt->add_subcommand("so3", "SO(3)-type moment fiber");
    so3->add_option("--k", so3_k, "dim V (2 or 4)")->required();
    so3->add_option("--prime", prime, "odd prime")->required();
    so3->add_option("--workers", cworkers, "worker threads");
    so3->add_flag("--allow-long", allow_long, "permit the k = 4 enumeration");
    auto* homw = cnt->add_subcommand("homw", "Hom(C^3, V_d) moment fiber");
    homw->add_option("--d", homw_d, "truncation degree")->required();
    homw->add_option("--prime", prime, "odd prime")->required();
    homw->add_option("--workers", cworkers, "worker threads");
    auto* mux = cnt->add_subcommand("mux", "mu_x fiber vs the claimed subspace");
    mux->add_option("--d", mux_d, "truncation degree")->required();
    mux->add_option("--n", mux_n, "minimal degree of x")->required();
    mux->add_option("--prime", prime, "odd prime")->required();
    mux->add_option("--workers", cworkers, "worker threads");
    auto* dimchk = cnt->add_subcommand("dimcheck", "stratified dimension formula vs slopes");
    dimchk->add_option("--d", dim_d, "truncation degree")->required();
    dimchk->add_option("--primes", primes, "primes for the slope");
    dimchk->add_option("--workers", cworkers, "worker threads");

    CLI11_PARSE(app, argc, argv);

    if (*verify)
        return cmd_verify(verify_path, out);
    if (*product)
        return cmd_product(verb, product_paths, seed, out_path, out);
    if (*hil)
        return cmd_hilbert(trunc, oracle_depth, out);
    if (*stab)
        return cmd_current_stabilizer(cd, xspec, out);
    if (*fib)
        return cmd_current_fiber(cd, cn, check_fp, workers, out);

    json prov = provenance_for({}, 0);
    try {
        if (*so3) {
            auto rep = count::count_so3_fiber(so3_k, prime, cworkers, allow_long);
            return out.ok(io::to_json(rep), prov);
        }
        if (*homw) {
            auto rep = count::count_homw_fiber(homw_d, prime, cworkers);
            return out.ok(io::to_json(rep), prov);
        }
        if (*mux) {
            auto rep = count::count_mux_fiber(mux_d, mux_n, prime, cworkers);
            int rc = out.ok(io::to_json(rep), prov);
            return rep.set_equality ? rc : 1;
        }
        if (*dimchk) {
            auto rep = count::verify_dim_formula(dim_d, primes, cworkers);
            json payload{{"d", rep.d}, {"predicted", rep.predicted},
                         {"slopes", rep.slopes}, {"agrees", rep.agrees}};
            int rc = out.ok(payload, prov);
            return rep.agrees ? rc : 1;
        }
    } catch (const Error& e) {
        return out.fail(error_kind_name(e.kind()), e.what(), prov);
    }
    return 1;
}
