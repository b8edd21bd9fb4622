#include "symdet/exprio.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "symdet/bigfloat.hpp"

namespace symdet {

namespace {

enum class Tok { Integer, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
            ++pos_;
        }
        const std::size_t line = line_, col = col_;
        if (pos_ >= src_.size()) { current_ = {Tok::End, "", line, col}; return; }
        const char c = src_[pos_];
        auto single = [&](Tok k) {
            current_ = {k, std::string(1, c), line, col};
            ++pos_; ++col_;
        };
        switch (c) {
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '^': single(Tok::Caret); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) { ++pos_; ++col_; }
            current_ = {Tok::Integer, src_.substr(start, pos_ - start), line, col};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) { ++pos_; ++col_; }
            current_ = {Tok::Ident, src_.substr(start, pos_ - start), line, col};
            return;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", line, col);
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token current_{Tok::End, "", 1, 1};
};

class ExprParser {
public:
    ExprParser(const std::string& src, const VarSet& vars) : lex_(src), vars_(vars) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (lex_.peek().kind != Tok::End)
            throw parse_error("unexpected trailing input '" + lex_.peek().text + "'",
                              lex_.peek().line, lex_.peek().col);
        return p;
    }

private:
    Polynomial expr() {
        Polynomial acc = term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            const bool minus = lex_.take().kind == Tok::Minus;
            Polynomial rhs = term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            acc *= factor();
        }
        return acc;
    }

    Polynomial factor() {
        bool negate = false;
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            if (lex_.take().kind == Tok::Minus) negate = !negate;
        }
        Polynomial p = power();
        return negate ? -p : p;
    }

    Polynomial power() {
        Polynomial base = atom();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            const Token e = lex_.take();
            if (e.kind != Tok::Integer)
                throw parse_error("exponent must be a non-negative integer literal", e.line, e.col);
            mpz_class big(e.text);
            if (!big.fits_ulong_p() || big.get_ui() > (1ULL << 40))
                throw parse_error("exponent too large", e.line, e.col);
            base = base.pow(big.get_ui());
        }
        return base;
    }

    Polynomial atom() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Tok::Integer:
                return Polynomial::constant(vars_, mpz_class(t.text));
            case Tok::Ident: {
                auto idx = vars_.index_of(t.text);
                if (!idx) throw unknown_variable_error(t.text, t.line, t.col);
                return Polynomial::variable(vars_, *idx);
            }
            case Tok::LParen: {
                Polynomial p = expr();
                const Token close = lex_.take();
                if (close.kind != Tok::RParen)
                    throw parse_error("expected ')'", close.line, close.col);
                return p;
            }
            case Tok::End:
                throw parse_error("unexpected end of expression", t.line, t.col);
            default:
                throw parse_error("unexpected token '" + t.text + "'", t.line, t.col);
        }
    }

    Lexer lex_;
    const VarSet& vars_;
};

} // namespace

Polynomial parse_poly(const std::string& text, const VarSet& vars) {
    return ExprParser(text, vars).parse();
}

std::string print_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& vars = p.vars();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        const bool negative = c < 0;
        if (out.empty()) {
            if (negative) out += '-';
        } else {
            out += negative ? '-' : '+';
        }
        mpz_class mag = ::abs(c);
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += vars.name(i);
            if (m[i] > 1) {
                mono += '^';
                mono += std::to_string(m[i]);
            }
        }
        if (mono.empty()) {
            out += mag.get_str();
        } else {
            if (mag != 1) {
                out += mag.get_str();
                out += '*';
            }
            out += mono;
        }
    }
    return out;
}

PolyMatrix InstanceFile::to_matrix() const {
    VarSet vs = varset();
    const std::size_t n = matrix.size();
    PolyMatrix m(vs, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            try {
                m.set(i, j, parse_poly(matrix[i][j], vs));
            } catch (const parse_error& e) {
                throw parse_error(parse_error::located_tag{},
                                  "matrix[" + std::to_string(i) + "][" + std::to_string(j) +
                                      "]: " + e.what(),
                                  e.line(), e.column());
            }
        }
    }
    return m;
}

namespace {

nlohmann::ordered_json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on '" + path.string() + "'");
    try {
        return nlohmann::ordered_json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw schema_error("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw io_error("write failure on '" + path.string() + "'");
}

} // namespace

InstanceFile load_instance_file(const std::filesystem::path& path) {
    const auto j = read_json_file(path);
    InstanceFile f;
    if (!j.is_object() || !j.contains("vars") || !j.contains("matrix"))
        throw schema_error("instance must be an object with 'vars' and 'matrix'");
    const auto& vars = j.at("vars");
    if (!vars.is_array()) throw schema_error("'vars' must be an array of strings");
    for (const auto& v : vars) {
        if (!v.is_string()) throw schema_error("'vars' must be an array of strings");
        f.vars.push_back(v.get<std::string>());
    }
    const auto& grid = j.at("matrix");
    if (!grid.is_array() || grid.empty()) throw schema_error("'matrix' must be a non-empty array of rows");
    const std::size_t n = grid.size();
    for (const auto& row : grid) {
        if (!row.is_array() || row.size() != n)
            throw schema_error("'matrix' must be a square grid of expression strings");
        std::vector<std::string> cells;
        for (const auto& cell : row) {
            if (!cell.is_string()) throw schema_error("matrix entries must be expression strings");
            cells.push_back(cell.get<std::string>());
        }
        f.matrix.push_back(std::move(cells));
    }
    if (j.contains("label")) {
        if (!j.at("label").is_string()) throw schema_error("'label' must be a string");
        f.label = j.at("label").get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw schema_error("'seed' must be an unsigned integer");
        f.seed = j.at("seed").get<std::uint64_t>();
    }
    // Surface expression/variable problems at load time, with cell positions.
    (void)f.to_matrix();
    return f;
}

PolyMatrix load_instance(const std::filesystem::path& path) {
    return load_instance_file(path).to_matrix();
}

std::string instance_to_json(const InstanceFile& f) {
    nlohmann::ordered_json j;
    j["vars"] = f.vars;
    j["matrix"] = f.matrix;
    if (f.label) j["label"] = *f.label;
    if (f.seed) j["seed"] = *f.seed;
    return j.dump(2) + "\n";
}

void save_instance(const std::filesystem::path& path, const InstanceFile& f) {
    write_text_file(path, instance_to_json(f));
}

Polynomial ResultFile::to_polynomial(const VarSet& vars) const {
    Polynomial p(vars);
    for (const auto& t : terms) {
        if (t.exps.size() != vars.size()) throw schema_error("result term arity does not match 'vars'");
        p.add_term(Monomial(t.exps), mpz_class(t.coeff));
    }
    return p;
}

ResultFile ResultFile::from_polynomial(const Polynomial& p, ResultDiagnostics diag) {
    ResultFile r;
    r.determinant = print_poly(p);
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        r.terms.push_back({it->first.exponents(), it->second.get_str()});
    r.diagnostics = std::move(diag);
    return r;
}

namespace {

double fixed3(double v) { return std::round(v * 1000.0) / 1000.0; }

} // namespace

std::string result_to_json(const ResultFile& r) {
    nlohmann::ordered_json j;
    j["determinant"] = r.determinant;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : r.terms) {
        nlohmann::ordered_json jt;
        jt["exps"] = t.exps;
        jt["coeff"] = t.coeff;
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    nlohmann::ordered_json d;
    d["bounds"] = r.diagnostics.bounds;
    d["substitution"] = r.diagnostics.substitution;
    d["reduced_bounds"] = r.diagnostics.reduced_bounds;
    d["lambda"] = r.diagnostics.lambda;
    d["epsilon"] = r.diagnostics.epsilon;
    d["precision_bits"] = r.diagnostics.precision_bits;
    d["nodes"] = r.diagnostics.nodes;
    d["verified"] = r.diagnostics.verified;
    d["escalations"] = r.diagnostics.escalations;
    d["ms_eval"] = fixed3(r.diagnostics.ms_eval);
    d["ms_solve"] = fixed3(r.diagnostics.ms_solve);
    j["diagnostics"] = std::move(d);
    return j.dump(2) + "\n";
}

void write_result(const std::filesystem::path& path, const ResultFile& r) {
    write_text_file(path, result_to_json(r));
}

ResultFile load_result(const std::filesystem::path& path) {
    const auto j = read_json_file(path);
    ResultFile r;
    try {
        r.determinant = j.at("determinant").get<std::string>();
        for (const auto& jt : j.at("terms")) {
            ResultTerm t;
            t.exps = jt.at("exps").get<std::vector<std::uint64_t>>();
            t.coeff = jt.at("coeff").get<std::string>();
            r.terms.push_back(std::move(t));
        }
        const auto& d = j.at("diagnostics");
        r.diagnostics.bounds = d.at("bounds").get<std::vector<std::uint64_t>>();
        r.diagnostics.substitution = d.at("substitution").get<std::vector<std::string>>();
        r.diagnostics.reduced_bounds = d.at("reduced_bounds").get<std::vector<std::uint64_t>>();
        r.diagnostics.lambda = d.at("lambda").get<double>();
        r.diagnostics.epsilon = d.at("epsilon").get<std::string>();
        r.diagnostics.precision_bits = d.at("precision_bits").get<std::uint64_t>();
        r.diagnostics.nodes = d.at("nodes").get<std::uint64_t>();
        r.diagnostics.verified = d.at("verified").get<bool>();
        r.diagnostics.escalations = d.at("escalations").get<std::uint64_t>();
        r.diagnostics.ms_eval = d.at("ms_eval").get<double>();
        r.diagnostics.ms_solve = d.at("ms_solve").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw schema_error("result file '" + path.string() + "' malformed: " + e.what());
    }
    return r;
}

std::string format_epsilon(const mpq_class& eps) {
    if (eps == 0) return "0";
    BigFloat f = BigFloat::from_mpq(eps, 128);
    std::string s = f.str(3);
    // "7.45e-09" -> "7.45e-9"; "1.23e+05" -> "1.23e5"
    auto epos = s.find('e');
    if (epos == std::string::npos) return s;
    std::string mant = s.substr(0, epos);
    std::string exp = s.substr(epos + 1);
    bool neg = false;
    std::size_t i = 0;
    if (i < exp.size() && (exp[i] == '+' || exp[i] == '-')) {
        neg = exp[i] == '-';
        ++i;
    }
    while (i + 1 < exp.size() && exp[i] == '0') ++i;
    return mant + "e" + (neg ? "-" : "") + exp.substr(i);
}

} // namespace symdet
