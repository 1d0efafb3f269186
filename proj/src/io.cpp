#include "padix/io.hpp"

#include <sstream>

namespace padix {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("parse error: " + what);
}

std::vector<std::string> next_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (!tok.empty()) return tok;
    }
    bad("unexpected end of input");
}

void expect(const std::vector<std::string>& tok, const std::string& key, size_t min_args) {
    if (tok[0] != key) bad("expected '" + key + "', got '" + tok[0] + "'");
    if (tok.size() < min_args + 1) bad("'" + key + "' needs " + std::to_string(min_args) + " fields");
}

long parse_long(const std::string& s) {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) bad("bad integer '" + s + "'");
    return v;
}

struct SeriesHeader {
    long p;
    std::vector<std::string> vars;
    int order;
    std::vector<Rational> center;
};

void write_series_body(std::ostream& os, const MultiSeries& s) {
    os << "vars";
    for (const auto& v : s.vars()) os << ' ' << v;
    os << "\norder " << s.order() << "\ncenter";
    for (const auto& c : s.center()) os << ' ' << rational_str(c);
    os << "\nterms " << s.terms().size() << '\n';
    for (const auto& [e, c] : s.terms()) {
        for (int x : e) os << x << ' ';
        os << rational_str(c) << '\n';
    }
}

SeriesHeader read_series_header(std::istream& is) {
    SeriesHeader h;
    auto tok = next_line(is);
    expect(tok, "vars", 1);
    h.vars.assign(tok.begin() + 1, tok.end());
    tok = next_line(is);
    expect(tok, "order", 1);
    h.order = static_cast<int>(parse_long(tok[1]));
    tok = next_line(is);
    expect(tok, "center", h.vars.size());
    for (size_t i = 0; i < h.vars.size(); ++i) h.center.push_back(parse_rational(tok[i + 1]));
    return h;
}

MultiSeries read_series_terms(std::istream& is, const SeriesHeader& h) {
    MultiSeries s(h.vars, h.order, h.center);
    auto tok = next_line(is);
    expect(tok, "terms", 1);
    long n = parse_long(tok[1]);
    for (long k = 0; k < n; ++k) {
        tok = next_line(is);
        if (tok.size() != h.vars.size() + 1) bad("term record arity");
        MultiSeries::Exponents e;
        for (size_t i = 0; i < h.vars.size(); ++i)
            e.push_back(static_cast<int>(parse_long(tok[i])));
        s.set_coeff(e, parse_rational(tok.back()));
    }
    return s;
}

}  // namespace

void write_series(std::ostream& os, const MultiSeries& s, long p) {
    os << "series\np " << p << '\n';
    write_series_body(os, s);
    os << "end series\n";
}

MultiSeries read_series(std::istream& is, long& p) {
    auto tok = next_line(is);
    expect(tok, "series", 0);
    tok = next_line(is);
    expect(tok, "p", 1);
    p = parse_long(tok[1]);
    SeriesHeader h = read_series_header(is);
    MultiSeries s = read_series_terms(is, h);
    tok = next_line(is);
    expect(tok, "end", 1);
    return s;
}

void write_form(std::ostream& os, const KForm& a, long p) {
    os << "form\np " << p << "\ndegree " << a.degree() << "\nvars";
    for (const auto& v : a.vars()) os << ' ' << v;
    os << "\norder " << a.order() << "\ncenter";
    for (const auto& c : a.center()) os << ' ' << rational_str(c);
    os << "\nframe";
    for (size_t i : a.frame()) os << ' ' << i;
    os << "\ncomponents " << a.terms().size() << '\n';
    for (const auto& [s, c] : a.terms()) {
        os << "subset";
        for (size_t i : s) os << ' ' << i;
        os << "\nterms " << c.terms().size() << '\n';
        for (const auto& [e, q] : c.terms()) {
            for (int x : e) os << x << ' ';
            os << rational_str(q) << '\n';
        }
    }
    os << "end form\n";
}

KForm read_form(std::istream& is, long& p) {
    auto tok = next_line(is);
    expect(tok, "form", 0);
    tok = next_line(is);
    expect(tok, "p", 1);
    p = parse_long(tok[1]);
    tok = next_line(is);
    expect(tok, "degree", 1);
    int degree = static_cast<int>(parse_long(tok[1]));
    SeriesHeader h = read_series_header(is);
    tok = next_line(is);
    expect(tok, "frame", 0);
    std::vector<size_t> frame;
    for (size_t i = 1; i < tok.size(); ++i) frame.push_back(static_cast<size_t>(parse_long(tok[i])));
    KForm a(degree, h.vars, h.order, h.center, frame);
    tok = next_line(is);
    expect(tok, "components", 1);
    long n = parse_long(tok[1]);
    for (long k = 0; k < n; ++k) {
        tok = next_line(is);
        expect(tok, "subset", 0);
        KForm::Subset s;
        for (size_t i = 1; i < tok.size(); ++i) s.push_back(static_cast<size_t>(parse_long(tok[i])));
        a.add_term(s, read_series_terms(is, h));
    }
    tok = next_line(is);
    expect(tok, "end", 1);
    return a;
}

void write_problem(std::ostream& os, const IVPProblem& prob, long p) {
    os << "ivp\np " << p << "\nx0 " << rational_str(prob.x0) << "\ninitial";
    if (prob.initial)
        for (const auto& v : *prob.initial) os << ' ' << rational_str(v);
    else
        os << " symbolic";
    os << "\ncomponents " << prob.f.size() << '\n';
    for (const auto& fi : prob.f) write_series_body(os, fi);
    os << "end ivp\n";
}

IVPProblem read_problem(std::istream& is, long& p) {
    auto tok = next_line(is);
    expect(tok, "ivp", 0);
    tok = next_line(is);
    expect(tok, "p", 1);
    p = parse_long(tok[1]);
    IVPProblem prob;
    tok = next_line(is);
    expect(tok, "x0", 1);
    prob.x0 = parse_rational(tok[1]);
    tok = next_line(is);
    expect(tok, "initial", 1);
    if (tok.size() == 2 && tok[1] == "symbolic") {
        prob.initial = std::nullopt;
    } else {
        std::vector<Rational> init;
        for (size_t i = 1; i < tok.size(); ++i) init.push_back(parse_rational(tok[i]));
        prob.initial = std::move(init);
    }
    tok = next_line(is);
    expect(tok, "components", 1);
    long n = parse_long(tok[1]);
    for (long k = 0; k < n; ++k) {
        SeriesHeader h = read_series_header(is);
        prob.f.push_back(read_series_terms(is, h));
    }
    prob.ell = prob.f.size();
    if (prob.initial && prob.initial->size() != prob.ell) bad("initial-condition arity");
    tok = next_line(is);
    expect(tok, "end", 1);
    return prob;
}

void write_rational_input(std::ostream& os, const RationalInput& in) {
    os << "rational\np " << in.p << "\nvar " << in.var << "\norder " << in.order << "\nnum";
    for (const auto& c : in.num) os << ' ' << rational_str(c);
    os << "\nden";
    for (const auto& c : in.den) os << ' ' << rational_str(c);
    os << '\n';
    if (in.claim) os << "claim " << rational_str(*in.claim) << '\n';
    os << "end rational\n";
}

RationalInput read_rational_input(std::istream& is) {
    RationalInput in;
    auto tok = next_line(is);
    expect(tok, "rational", 0);
    tok = next_line(is);
    expect(tok, "p", 1);
    in.p = parse_long(tok[1]);
    tok = next_line(is);
    expect(tok, "var", 1);
    in.var = tok[1];
    tok = next_line(is);
    expect(tok, "order", 1);
    in.order = static_cast<int>(parse_long(tok[1]));
    tok = next_line(is);
    expect(tok, "num", 1);
    for (size_t i = 1; i < tok.size(); ++i) in.num.push_back(parse_rational(tok[i]));
    tok = next_line(is);
    expect(tok, "den", 1);
    for (size_t i = 1; i < tok.size(); ++i) in.den.push_back(parse_rational(tok[i]));
    tok = next_line(is);
    if (tok[0] == "claim") {
        expect(tok, "claim", 1);
        in.claim = parse_rational(tok[1]);
        tok = next_line(is);
    }
    expect(tok, "end", 1);
    return in;
}

void write_certificate(std::ostream& os, const Certificate& cert) {
    os << "certificate " << cert.name << "\nverdict " << cert.verdict << '\n';
    for (const auto& d : cert.details) os << "detail " << d << '\n';
    os << "end certificate\n";
}

void write_report(std::ostream& os, const DarbouxReport& rep, const Context& ctx) {
    os << "darboux-report\np " << ctx.p << "\nD " << ctx.D << "\nDt " << ctx.Dt << '\n';
    os << "linear-change " << rep.linear_change.size() << '\n';
    for (const auto& row : rep.linear_change) {
        for (size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << rational_str(row[j]);
        os << '\n';
    }
    os << "residuals " << rep.residuals.size() << '\n';
    for (const auto& [name, val] : rep.residuals) os << name << " = " << val << '\n';
    for (const auto& cert : rep.certificates) write_certificate(os, cert);
    os << "field-components " << rep.X.components.size() << '\n';
    for (const auto& c : rep.X.components) write_series_body(os, c);
    os << "flow-components " << rep.psi.size() << '\n';
    for (const auto& c : rep.psi) write_series_body(os, c);
    os << "success " << (rep.success ? "yes" : "no") << '\n';
    os << "end darboux-report\n";
}

}  // namespace padix
