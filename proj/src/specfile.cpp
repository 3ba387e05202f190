#include "skewloc/specfile.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "skewloc/errors.hpp"

namespace skewloc {

namespace {

std::string hexf(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hexf(const std::string& s, int line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw FormatError("bad numeric field '" + s + "'", line);
    return v;
}

struct LineReader {
    std::istringstream in;
    int line_no = 0;
    std::string current;

    explicit LineReader(const std::string& text) : in(text) {}

    bool next() {
        while (std::getline(in, current)) {
            ++line_no;
            if (!current.empty()) return true;
        }
        return false;
    }

    std::vector<std::string> fields() const {
        std::vector<std::string> out;
        std::istringstream ls(current);
        std::string f;
        while (ls >> f) out.push_back(f);
        return out;
    }
};

void write_poly_terms(std::ostringstream& out, const TrigPoly& p) {
    for (const auto& t : p.terms()) {
        out << "term";
        for (int i = 0; i < p.dim(); ++i) out << ' ' << t.l[static_cast<std::size_t>(i)];
        out << ' ' << hexf(t.c.real()) << ' ' << hexf(t.c.imag()) << '\n';
    }
}

} // namespace

std::string serialize_spec(const OperatorSpec& spec) {
    std::ostringstream out;
    out << "skewloc-spec v1\n";
    out << "d " << spec.d << '\n';
    out << "seed " << spec.seed << '\n';
    out << "omega " << spec.omega.fixed.to_hex() << '\n';
    out << "omega_dc " << hexf(spec.omega.dc_constant) << '\n';
    out << "gamma " << hexf(spec.hopping.gamma) << '\n';
    out << "c1 " << hexf(spec.hopping.C1) << '\n';
    out << "k_max " << spec.hopping.K_max << '\n';
    out << "v_degree " << spec.v_degree << '\n';
    out << "x0";
    for (int i = 0; i < spec.d; ++i) out << ' ' << hexf(spec.x0.coord(i));
    out << '\n';
    out << "v " << spec.v.terms().size() << '\n';
    write_poly_terms(out, spec.v);
    for (int k = 1; k <= spec.hopping.K_max; ++k) {
        const TrigPoly& phi = spec.hopping.phis[static_cast<std::size_t>(k - 1)];
        out << "phi " << k << ' ' << phi.terms().size() << '\n';
        write_poly_terms(out, phi);
    }
    out << "end\n";
    return out.str();
}

OperatorSpec parse_spec(const std::string& text) {
    LineReader r(text);
    auto expect = [&](const char* what) {
        if (!r.next()) throw FormatError(std::string("unexpected end of file, expected ") + what, r.line_no);
    };
    auto key_fields = [&](const char* key, std::size_t nfields) {
        auto f = r.fields();
        if (f.empty() || f[0] != key)
            throw FormatError(std::string("expected '") + key + "' record", r.line_no);
        if (f.size() != nfields + 1)
            throw FormatError(std::string("'") + key + "' needs " + std::to_string(nfields) + " fields",
                              r.line_no);
        return std::vector<std::string>(f.begin() + 1, f.end());
    };

    expect("header");
    if (r.current != "skewloc-spec v1") throw FormatError("bad header", r.line_no);

    OperatorSpec spec;
    expect("d");
    spec.d = std::stoi(key_fields("d", 1)[0]);
    if (spec.d < 1 || spec.d > kMaxTrigDim) throw FormatError("d out of range", r.line_no);
    expect("seed");
    spec.seed = std::strtoull(key_fields("seed", 1)[0].c_str(), nullptr, 10);
    expect("omega");
    const std::string omega_hex = key_fields("omega", 1)[0];
    expect("omega_dc");
    const double dc = parse_hexf(key_fields("omega_dc", 1)[0], r.line_no);
    try {
        spec.omega = Frequency::from_fixed(Fixed256::from_hex(omega_hex), dc);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), r.line_no);
    }
    expect("gamma");
    spec.hopping.gamma = parse_hexf(key_fields("gamma", 1)[0], r.line_no);
    expect("c1");
    spec.hopping.C1 = parse_hexf(key_fields("c1", 1)[0], r.line_no);
    expect("k_max");
    spec.hopping.K_max = std::stoi(key_fields("k_max", 1)[0]);
    if (spec.hopping.K_max < 0 || spec.hopping.K_max > 4096)
        throw FormatError("k_max out of range", r.line_no);
    expect("v_degree");
    spec.v_degree = std::stoi(key_fields("v_degree", 1)[0]);
    expect("x0");
    {
        auto f = key_fields("x0", static_cast<std::size_t>(spec.d));
        std::vector<double> coords;
        for (const auto& s : f) coords.push_back(parse_hexf(s, r.line_no));
        for (double c : coords)
            if (!(c >= 0.0) || c >= 1.0) throw FormatError("x0 coordinate outside [0,1)", r.line_no);
        spec.x0 = TorusPoint::from_doubles(coords);
    }

    auto read_poly = [&](bool real_valued, std::size_t nterms) {
        TrigPoly p(spec.d, real_valued);
        for (std::size_t t = 0; t < nterms; ++t) {
            expect("term");
            auto f = r.fields();
            if (f.empty() || f[0] != "term")
                throw FormatError("expected 'term' record", r.line_no);
            if (f.size() != static_cast<std::size_t>(spec.d) + 3)
                throw FormatError("term record has wrong field count", r.line_no);
            std::array<int, kMaxTrigDim> l{};
            for (int i = 0; i < spec.d; ++i) l[static_cast<std::size_t>(i)] = std::stoi(f[static_cast<std::size_t>(i) + 1]);
            const double re = parse_hexf(f[static_cast<std::size_t>(spec.d) + 1], r.line_no);
            const double im = parse_hexf(f[static_cast<std::size_t>(spec.d) + 2], r.line_no);
            p.add_term(l, {re, im});
        }
        p.freeze();
        return p;
    };

    expect("v");
    {
        auto f = key_fields("v", 1);
        spec.v = read_poly(true, std::stoul(f[0]));
    }
    for (int k = 1; k <= spec.hopping.K_max; ++k) {
        expect("phi");
        auto f = key_fields("phi", 2);
        if (std::stoi(f[0]) != k) throw FormatError("phi records out of order", r.line_no);
        spec.hopping.phis.push_back(read_poly(false, std::stoul(f[1])));
    }
    expect("end");
    if (r.current != "end") throw FormatError("expected 'end'", r.line_no);
    return spec;
}

void save_spec(const OperatorSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << serialize_spec(spec);
}

OperatorSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::vector<std::string> validate_spec_file(const std::string& path) {
    return check_spec_invariants(load_spec(path));
}

} // namespace skewloc
