#include "koszul/cli/run.hpp"

#include "koszul/cli/grammar.hpp"
#include "koszul/deformation/transport.hpp"
#include "koszul/diffops/order.hpp"
#include "koszul/formality/poisson_forms.hpp"

#include <algorithm>
#include <set>

namespace koszul::cli {

namespace {

Element parse_at(const ModelPtr& model, const std::string& text, const std::string& field) {
    try {
        return parse_element(model, text);
    } catch (const ParseError& e) {
        throw InputError("field " + field, e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError("field " + field, e.what());
    }
}

Polyvector parse_polyvector(const DeRham& m, const std::string& text, const std::string& field) {
    Element e = parse_at(m.vectors(), text, field);
    if (e.is_zero()) return Polyvector(m, Element(m.vectors(), {}));
    if (!e.is_homogeneous()) throw InputError("field " + field, "polyvector is not of pure arity: " + text);
    return Polyvector(m, e);
}

std::string vec_text(const FiniteDGLA& L, const Vec& v) { return L.format(v); }

std::string coordinates(const Vec& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
    return out + "]";
}

Series series_of(const FiniteDGLA& L, int m, std::initializer_list<std::pair<int, Vec>> terms) {
    Series s = Series::zero(L, ArtinianBase(m));
    for (const auto& [p, v] : terms)
        if (p < m) s.coeffs[static_cast<std::size_t>(p)] = s.coeffs[static_cast<std::size_t>(p)] + v;
    return s;
}

struct Context {
    const CheckRequest& req;
    std::shared_ptr<const DeRham> m;
    std::optional<Polyvector> pi;
    std::optional<KoszulStructure> s;
    std::optional<Certificate> formality;
    DGLAPtr dgla;

    const Polyvector& bivector(const std::string& suite) {
        if (!pi) {
            if (!req.bivector) throw InputError("field /bivector", "suite " + suite + " needs a bivector");
            Polyvector p = parse_polyvector(*m, *req.bivector, "/bivector");
            if (!p.is_zero() && p.arity() != 2)
                throw InputError("field /bivector", "expected a bivector, got arity " + std::to_string(p.arity().value_or(-1)));
            pi = p;
        }
        return *pi;
    }
    KoszulStructure& structure(const std::string& suite) {
        if (!s) s = poisson_structure(*m, bivector(suite));
        return *s;
    }
    const Certificate& formality_witness_for(const std::string& suite) {
        if (!formality) {
            auto& st = structure(suite);
            formality = formality_witness(st, std::max(3, req.caps.arity_cap), st.letters(req.caps.degree_cap));
        }
        return *formality;
    }
};

Certificate cartan(Context& cx) {
    std::vector<std::pair<Polyvector, Polyvector>> pairs;
    for (std::size_t i = 0; i < cx.req.cartan_pairs.size(); ++i) {
        const std::string base = "/cartan_pairs/" + std::to_string(i);
        pairs.emplace_back(parse_polyvector(*cx.m, cx.req.cartan_pairs[i].first, base + "/eta"),
                           parse_polyvector(*cx.m, cx.req.cartan_pairs[i].second, base + "/mu"));
    }
    if (pairs.empty()) {
        if (!cx.req.bivector) throw InputError("field /cartan_pairs", "suite cartan needs cartan_pairs or a bivector");
        pairs.emplace_back(cx.bivector("cartan"), cx.bivector("cartan"));
    }
    Certificate out;
    out.suite = "cartan";
    out.window["pairs"] = std::to_string(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        Certificate c = cartan_suite(*cx.m, pairs[i].first, pairs[i].second, FormWindow{cx.req.caps.degree_cap, -1});
        out.absorb(c, pairs.size() == 1 ? std::string() : "pair " + std::to_string(i + 1) + ": ");
    }
    return out;
}

LinearOperator requested_operator(Context& cx) {
    const auto& forms = cx.m->forms();
    NormalForm nf(forms);
    for (std::size_t i = 0; i < cx.req.op.size(); ++i) {
        const std::string base = "/operator/" + std::to_string(i);
        Element c = parse_at(forms, cx.req.op[i].coefficient, base + "/coefficient");
        Monomial key = forms->one();
        for (std::size_t j = 0; j < cx.req.op[i].derivatives.size(); ++j) {
            const std::string& name = cx.req.op[i].derivatives[j];
            auto g = forms->find(name);
            const std::string field = "field " + base + "/derivatives/" + std::to_string(j);
            if (!g) throw InputError(field, "unknown generator '" + name + "'");
            if (forms->generator(*g).odd() && key.exps[*g] > 0)
                throw InputError(field, "repeated odd derivative d/d" + name + " (it squares to zero)");
            ++key.exps[*g];
        }
        nf.add(c, key);
    }
    if (!nf.is_zero() && !nf.degree())
        throw InputError("field /operator", "operator is not homogeneous: " + nf.to_string());
    return LinearOperator::from_normal_form(nf);
}

Certificate quasi_bv(Context& cx) {
    LinearOperator f = !cx.req.op.empty() ? requested_operator(cx)
                       : cx.req.bivector  ? interior_operator(*cx.m, cx.bivector("quasi-bv"))
                                          : throw InputError("field /operator", "suite quasi-bv needs an operator or a bivector");
    Certificate c = quasi_bv_report(f).certificate;
    c.window["operator"] = cx.req.op.empty() ? "i_pi" : f.normal_form()->to_string();
    return c;
}

Certificate poisson(Context& cx) {
    const Polyvector& pi = cx.bivector("poisson");
    Certificate c = is_poisson(*cx.m, pi);
    const bool is_p = c.passed();
    QuasiBVReport rep = quasi_bv_report(commutator(lie_operator(*cx.m, pi), interior_operator(*cx.m, pi)));
    Check& agree = c.add("[l_pi,i_pi] is quasi-BV iff [pi,pi] = 0");
    agree.cases = 1;
    if (rep.quasi_bv() != is_p)
        agree.fail({{"pi", pi.to_string()},
                    {"[pi,pi] = 0", is_p ? "yes" : "no"},
                    {"[l_pi,i_pi] quasi-BV", rep.quasi_bv() ? "yes" : "no"}});
    c.window["[l_pi,i_pi] quasi-BV"] = rep.quasi_bv() ? "yes" : "no";
    return c;
}

Subspace requested_subspace(Context& cx) {
    if (!cx.req.subcomplex) throw InputError("field /subcomplex", "suite subcomplex needs a subcomplex description");
    const auto& d = *cx.req.subcomplex;
    const auto& forms = cx.m->forms();
    if (d.kind == "degree_at_least") return Subspace::degree_at_least(forms, d.degree);
    if (d.kind == "ideal") {
        for (std::size_t i = 0; i < d.items.size(); ++i)
            if (!forms->find(d.items[i]))
                throw InputError("field /subcomplex/generators/" + std::to_string(i), "unknown generator '" + d.items[i] + "'");
        return Subspace::monomial_ideal(forms, d.items);
    }
    std::vector<Element> span;
    std::string desc = "span{";
    for (std::size_t i = 0; i < d.items.size(); ++i) {
        span.push_back(parse_at(forms, d.items[i], "/subcomplex/elements/" + std::to_string(i)));
        desc += (i ? ", " : "") + span.back().to_string();
    }
    return Subspace::span(desc + "}", std::move(span));
}

Certificate subcomplex(Context& cx) {
    auto& s = cx.structure("subcomplex");
    return subcomplex_witness(s, requested_subspace(cx), s.letters(cx.req.caps.degree_cap), cx.req.caps.arity_cap);
}

std::vector<Vec> dgla_data(Context& cx, const std::function<Vec(const std::string&, const std::string&)>& parse) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < cx.req.first_order.size(); ++i) {
        const std::string field = "/first_order/" + std::to_string(i);
        Vec v = parse(cx.req.first_order[i], field);
        if (!is_zero(cx.dgla->d(v))) throw InputError("field " + field, "first-order datum is not closed");
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero() && cx.dgla->degree(j) != 1)
                throw InputError("field " + field, "first-order datum must have degree 1");
        out.push_back(std::move(v));
    }
    return out;
}

Certificate mc_de_rham(Context& cx) {
    auto& s = cx.structure("mc");
    KoszulSlice slice;
    try {
        slice = koszul_slice(s, cx.req.caps.degree_cap);
    } catch (const std::invalid_argument& e) {
        throw InputError("field /caps/degree_cap", std::string("incompatible caps: ") + e.what());
    }
    cx.dgla = slice.dgla;
    auto data = dgla_data(cx, [&](const std::string& text, const std::string& field) {
        Element e = parse_at(s.model(), text, field);
        try {
            return slice.to_vec(e);
        } catch (const std::invalid_argument& err) {
            throw InputError("field " + field, err.what());
        }
    });
    Certificate c = mc_suite(*slice.dgla, data, cx.req.caps.truncation_order);
    c.window["slice"] = "weight <= " + std::to_string(cx.req.caps.degree_cap) + ", dimension " +
                        std::to_string(slice.basis.size());

    // Transport t*x for each datum, a closed form of degree 2k, along e^R.
    const Certificate& w = cx.formality_witness_for("mc");
    if (!w.passed()) {
        c.window["transport"] = "skipped (formality witness failed)";
        return c;
    }
    c.window["transport"] = "checked";
    Check& tr = c.add("transported e^R(x) satisfies the Q Maurer-Cartan equation");
    std::vector<Element> xs;
    for (const auto& v : data) xs.push_back(slice.to_element(v));
    if (data.empty()) {
        auto h1 = cohomology_basis(slice.dgla->complex(), 1);
        for (const auto& r : h1.representatives) xs.push_back(slice.to_element(r));
    }
    for (const auto& x : xs) {
        ElementSeries series(static_cast<std::size_t>(cx.req.caps.truncation_order + 1), Element(s.model(), {}));
        series[1] = x;
        ElementSeries y = transport_mc(s, w, series);
        ElementSeries r = q_mc_residual(s, y);
        ++tr.cases;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!r[i].is_zero()) {
                tr.fail({{"x", x.to_string()}, {"order", std::to_string(i)}, {"residual", r[i].to_string()}});
                break;
            }
    }
    return c;
}

Certificate mc_finite(Context& cx) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < cx.dgla->dimension(); ++i) gens.push_back({cx.dgla->name(i), cx.dgla->degree(i)});
    auto names = FreeModel::make(gens);
    auto data = dgla_data(cx, [&](const std::string& text, const std::string& field) {
        Element e = parse_at(names, text, field);
        Vec v = cx.dgla->zero();
        for (const auto& [k, c] : e.terms()) {
            if (FreeModel::count(k) != 1) throw InputError("field " + field, "expected a linear combination of basis elements");
            v[static_cast<std::size_t>(std::find(k.exps.begin(), k.exps.end(), 1) - k.exps.begin())] = c;
        }
        return v;
    });
    return mc_suite(*cx.dgla, data, cx.req.caps.truncation_order);
}

DGLAPtr build_dgla(const CheckRequest& req) {
    const auto& d = req.dgla;
    std::vector<Generator> gens;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < d.basis.size(); ++i) {
        if (!seen.insert(d.basis[i].name).second)
            throw InputError("field /model/basis/" + std::to_string(i) + "/name", "duplicate name '" + d.basis[i].name + "'");
        gens.push_back({d.basis[i].name, d.basis[i].degree});
    }
    auto names = FreeModel::make(gens);
    auto index_of = [&](const std::string& name, const std::string& field) {
        auto i = names->find(name);
        if (!i) throw InputError("field " + field, "unknown basis element '" + name + "'");
        return *i;
    };
    auto linear = [&](const std::string& text, const std::string& field) {
        FiniteDGLA::Sparse v;
        const Element e = parse_at(names, text, field);
        for (const auto& [k, c] : e.terms()) {
            if (FreeModel::count(k) != 1) throw InputError("field " + field, "expected a linear combination of basis elements");
            v[static_cast<std::size_t>(std::find(k.exps.begin(), k.exps.end(), 1) - k.exps.begin())] = c;
        }
        return v;
    };
    FiniteDGLA::Spec spec;
    for (const auto& g : gens) spec.basis.push_back(g);
    spec.differential.resize(gens.size());
    for (const auto& [name, value] : d.differential) {
        const std::string field = "/model/differential/" + name;
        spec.differential[index_of(name, "field " + field)] = linear(value, field);
    }
    for (std::size_t i = 0; i < d.bracket.size(); ++i) {
        const std::string base = "/model/bracket/" + std::to_string(i);
        const std::size_t a = index_of(d.bracket[i].left, "field " + base + "/left");
        const std::size_t b = index_of(d.bracket[i].right, "field " + base + "/right");
        if (spec.bracket.count({a, b})) throw InputError("field " + base, "bracket entry given twice");
        spec.bracket[{a, b}] = linear(d.bracket[i].value, base + "/value");
    }
    try {
        return FiniteDGLA::make(std::move(spec));
    } catch (const std::invalid_argument& e) {
        throw InputError("field /model", e.what());
    }
}

void check_witnesses(const Certificate& c) {
    for (const auto& ch : c.checks)
        if (!ch.passed && ch.witness.empty())
            throw std::logic_error("suite " + c.suite + ": check '" + ch.name + "' failed without a witness");
}

}  // namespace

Certificate mc_suite(const FiniteDGLA& L, const std::vector<Vec>& given, int order) {
    Certificate c;
    c.suite = "mc";
    const int m = order + 1;
    auto h1 = cohomology_basis(L.complex(), 1), h2 = cohomology_basis(L.complex(), 2);
    std::vector<Vec> data = given;
    if (data.empty()) data = h1.representatives;
    c.window["base"] = "Q[t]/(t^" + std::to_string(m) + ")";
    c.window["H1"] = std::to_string(h1.betti());
    c.window["H2"] = std::to_string(h2.betti());
    c.window["data"] = given.empty() ? "H1 representatives" : "given";
    c.window["bch"] = "exact modulo t^" + std::to_string(m);

    Check& lifts = c.add("first-order data lift to order " + std::to_string(order));
    Check& mc = c.add("lifted series satisfy dx + 1/2[x,x] = 0");
    Check& orbit = c.add("gauge orbits stay in the MC set");
    Check& group = c.add("BCH composes gauge actions");
    const auto deg0 = L.basis_of_degree(0);
    for (const auto& x1 : data) {
        ++lifts.cases;
        LiftResult r = lift_mc(L, x1, order);
        if (!r.lifted()) {
            const auto& o = r.obstruction();
            lifts.fail({{"x1", vec_text(L, x1)},
                        {"order", std::to_string(o.order)},
                        {"obstruction", vec_text(L, o.representative)},
                        {"class in H^2", coordinates(o.cohomology_class)}},
                       "obstructed");
            continue;
        }
        const Series& x = r.mc();
        ++mc.cases;
        if (Series res = mc_residual(L, x); !res.is_zero())
            mc.fail({{"x", format(L, x)}, {"residual", format(L, res)}});
        for (std::size_t k = 0; k < deg0.size(); ++k) {
            const Vec e = L.unit_vector(deg0[k]), f = L.unit_vector(deg0[(k + 1) % deg0.size()]);
            Series l1 = series_of(L, m, {{1, e}, {2, f}}), l2 = series_of(L, m, {{1, f}, {2, Scalar(-1) * e}});
            Series y = gauge_act(L, l1, x);
            ++orbit.cases;
            if (Series res = mc_residual(L, y); !res.is_zero())
                orbit.fail({{"x", format(L, x)}, {"lambda", format(L, l1)}, {"residual", format(L, res)}});
            ++group.cases;
            Series lhs = gauge_act(L, bch(L, l2, l1), x), rhs = gauge_act(L, l2, y);
            if (!(lhs == rhs))
                group.fail({{"x", format(L, x)}, {"a", format(L, l2)}, {"b", format(L, l1)}, {"difference", format(L, lhs - rhs)}});
        }
    }
    return c;
}

Report run_verify(const CheckRequest& req) {
    if (req.suites.empty()) throw InputError("field /suites", "no suite selected");
    for (const auto& s : req.suites)
        if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
            throw InputError("field /suites", "unknown suite '" + s + "'");
    const Caps& caps = req.caps;
    if (caps.degree_cap < 1 || caps.arity_cap < 1 || caps.truncation_order < 1)
        throw InputError("caps", "all caps must be positive");
    if (caps.degree_cap > 4) throw InputError("field /caps/degree_cap", "degree cap above 4 is not supported");
    if (caps.arity_cap > 6) throw InputError("field /caps/arity_cap", "arity cap above 6 is not supported");
    if (caps.truncation_order > 7) throw InputError("field /caps/truncation_order", "truncation order above 7 (m > 8) is not supported");
    for (const auto& s : req.suites)
        if ((s == "formality" || s == "subcomplex") && caps.arity_cap < 3)
            throw InputError("field /caps/arity_cap", "incompatible caps: suite " + s + " needs arity_cap >= 3");

    Report rep;
    rep.model["kind"] = req.model_kind;
    rep.caps = {{"degree_cap", caps.degree_cap}, {"arity_cap", caps.arity_cap}, {"truncation_order", caps.truncation_order}};
    Context cx{req, nullptr, std::nullopt, std::nullopt, std::nullopt, nullptr};
    if (req.model_kind == "de_rham") {
        rep.model["n"] = std::to_string(req.n);
        cx.m = DeRham::make(req.n);
        if (req.bivector) rep.model["bivector"] = cx.bivector("model").to_string();
    } else {
        rep.model["dimension"] = std::to_string(req.dgla.basis.size());
        cx.dgla = build_dgla(req);
        for (const auto& s : req.suites)
            if (s != "mc") throw InputError("field /suites", "suite " + s + " needs a de_rham model");
    }

    for (const auto& name : req.suites) {
        Certificate c;
        if (name == "cartan") c = cartan(cx);
        else if (name == "quasi-bv") c = quasi_bv(cx);
        else if (name == "poisson") c = poisson(cx);
        else if (name == "koszul") {
            auto& s = cx.structure(name);
            c = koszul_suite(*cx.m, cx.bivector(name), s, s.letters(caps.degree_cap));
        } else if (name == "formality") c = cx.formality_witness_for(name);
        else if (name == "subcomplex") c = subcomplex(cx);
        else c = cx.m ? mc_de_rham(cx) : mc_finite(cx);
        check_witnesses(c);
        rep.certificates.push_back(std::move(c));
    }
    return rep;
}

}  // namespace koszul::cli
