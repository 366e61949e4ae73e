#include "koszul/presentation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace koszul {

Word empty_word(int vertex) {
    Word w;
    w.vtx = vertex;
    return w;
}

Word single_word(int gen) {
    Word w;
    w.letters.push_back(gen);
    return w;
}

int word_cmp(const Word& a, const Word& b) {
    if (a.degree() != b.degree())
        return a.degree() < b.degree() ? -1 : 1;
    if (a.empty()) {
        // later vertices rank lower, matching the generator convention
        if (a.vtx != b.vtx)
            return a.vtx > b.vtx ? -1 : 1;
        return 0;
    }
    for (size_t i = 0; i < a.letters.size(); ++i) {
        if (a.letters[i] != b.letters[i])
            return a.letters[i] > b.letters[i] ? -1 : 1;
    }
    return 0;
}

Polynomial Polynomial::monomial(Word w, Scalar c) {
    Polynomial p;
    if (c != 0)
        p.terms_.push_back({std::move(w), std::move(c)});
    return p;
}

Polynomial Polynomial::scalar(const Scalar& c, int vertex) {
    return monomial(empty_word(vertex), c);
}

Polynomial Polynomial::from_terms(std::vector<Term> terms, const Field& field) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return word_cmp(x.word, y.word) > 0; });
    Polynomial p;
    for (auto& t : terms) {
        Scalar c = field.normalize(t.coeff);
        if (c == 0)
            continue;
        if (!p.terms_.empty() && p.terms_.back().word == t.word) {
            p.terms_.back().coeff = field.add(p.terms_.back().coeff, c);
            if (p.terms_.back().coeff == 0)
                p.terms_.pop_back();
        } else {
            p.terms_.push_back({std::move(t.word), std::move(c)});
        }
    }
    return p;
}

const Term& Polynomial::leading() const {
    if (terms_.empty())
        fail(ErrorKind::internal, "leading term of zero polynomial");
    return terms_.front();
}

bool Polynomial::is_homogeneous() const {
    for (const auto& t : terms_)
        if (t.word.degree() != terms_.front().word.degree())
            return false;
    return true;
}

int Polynomial::degree() const {
    return terms_.empty() ? -1 : terms_.front().word.degree();
}

Polynomial Polynomial::plus(const Polynomial& o, const Field& field) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(all), field);
}

Polynomial Polynomial::minus(const Polynomial& o, const Field& field) const {
    std::vector<Term> all = terms_;
    for (const auto& t : o.terms_)
        all.push_back({t.word, field.neg(t.coeff)});
    return from_terms(std::move(all), field);
}

Polynomial Polynomial::scaled(const Scalar& c, const Field& field) const {
    std::vector<Term> all;
    for (const auto& t : terms_)
        all.push_back({t.word, field.mul(t.coeff, c)});
    return from_terms(std::move(all), field);
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size())
        return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].word == o.terms_[i].word) || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

bool AlgebraPresentation::is_path(const Word& w) const {
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (gens.target[w.letters[i]] != gens.source[w.letters[i + 1]])
            return false;
    return true;
}

std::optional<Word> AlgebraPresentation::concat(const Word& u, const Word& v) const {
    if (target_of(u) != source_of(v))
        return std::nullopt;
    if (u.empty())
        return v;
    if (v.empty())
        return u;
    Word w = u;
    w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
    return w;
}

int AlgebraPresentation::max_relation_degree() const {
    int m = 0;
    for (const auto& r : relations)
        m = std::max(m, r.degree());
    return m;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
    enum Kind { ident, number, symbol, end } kind;
    std::string text;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<std::vector<Token>> statements() {
        std::vector<std::vector<Token>> stmts;
        std::vector<Token> cur;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
                continue;
            }
            if (c == '\n' || c == ';') {
                if (!cur.empty())
                    stmts.push_back(std::move(cur));
                cur.clear();
                advance();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                Token t{Token::ident, "", line_, col_};
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                    t.text += text_[pos_], advance();
                cur.push_back(std::move(t));
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                Token t{Token::number, "", line_, col_};
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    t.text += text_[pos_], advance();
                cur.push_back(std::move(t));
                continue;
            }
            static const std::string symbols = ",*+-/()@";
            if (symbols.find(c) != std::string::npos) {
                cur.push_back({Token::symbol, std::string(1, c), line_, col_});
                advance();
                continue;
            }
            fail(ErrorKind::syntax, "line " + std::to_string(line_) + ", col " +
                                        std::to_string(col_) + ": unexpected character '" +
                                        std::string(1, c) + "'");
        }
        if (!cur.empty())
            stmts.push_back(std::move(cur));
        return stmts;
    }

  private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

[[noreturn]] void syntax_error(const Token& t, const std::string& what) {
    fail(ErrorKind::syntax,
         "line " + std::to_string(t.line) + ", col " + std::to_string(t.col) + ": " + what);
}

class StmtParser {
  public:
    explicit StmtParser(const std::vector<Token>& toks) : toks_(toks) {}

    bool done() const { return i_ >= toks_.size(); }

    const Token& peek() const {
        static Token eof{Token::end, "", 0, 0};
        return done() ? eof : toks_[i_];
    }

    Token next(const std::string& what) {
        if (done()) {
            Token last = toks_.empty() ? Token{Token::end, "", 1, 1} : toks_.back();
            syntax_error(last, "expected " + what + " before end of statement");
        }
        return toks_[i_++];
    }

    bool accept_symbol(const std::string& s) {
        if (!done() && toks_[i_].kind == Token::symbol && toks_[i_].text == s) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect_symbol(const std::string& s) {
        Token t = next("'" + s + "'");
        if (t.kind != Token::symbol || t.text != s)
            syntax_error(t, "expected '" + s + "', got '" + t.text + "'");
    }

    long expect_int() {
        Token t = next("integer");
        if (t.kind != Token::number)
            syntax_error(t, "expected integer, got '" + t.text + "'");
        return std::stol(t.text);
    }

    std::string expect_ident() {
        Token t = next("identifier");
        if (t.kind != Token::ident)
            syntax_error(t, "expected identifier, got '" + t.text + "'");
        return t.text;
    }

  private:
    const std::vector<Token>& toks_;
    size_t i_ = 0;
};

int gen_index(const AlgebraPresentation& a, const std::string& name, const Token& at) {
    for (int g = 0; g < a.num_gens(); ++g)
        if (a.gens.names[g] == name)
            return g;
    syntax_error(at, "unknown generator '" + name + "'");
}

// polynomial := ["-"] term (("+"|"-") term)*
// term := coeff | [coeff "*"] name ("*" name)*
Polynomial parse_polynomial(StmtParser& p, const AlgebraPresentation& a, const Field& field,
                            int scalar_vertex) {
    std::vector<Term> terms;
    bool first = true;
    while (true) {
        Scalar sign = 1;
        if (p.accept_symbol("-"))
            sign = -1;
        else if (!first)
            p.expect_symbol("+");
        first = false;

        Scalar coeff = sign;
        bool have_coeff = false;
        if (p.peek().kind == Token::number) {
            long num = p.expect_int();
            long den = 1;
            if (p.accept_symbol("/"))
                den = p.expect_int();
            if (den == 0)
                fail(ErrorKind::syntax, "zero denominator in coefficient");
            coeff = sign * Scalar(num, den);
            coeff.canonicalize();
            have_coeff = true;
        }

        Word w = empty_word(scalar_vertex);
        bool have_word = false;
        if (!have_coeff || p.accept_symbol("*")) {
            Token at = p.peek();
            std::string name = p.expect_ident();
            w.letters.push_back(gen_index(a, name, at));
            have_word = true;
            while (p.accept_symbol("*")) {
                Token at2 = p.peek();
                std::string n2 = p.expect_ident();
                w.letters.push_back(gen_index(a, n2, at2));
            }
        }
        if (have_word && a.quiver && !a.is_path(w)) {
            fail(ErrorKind::validation,
                 "word '" + print_word(w, a) + "' is not a composable path");
        }
        terms.push_back({std::move(w), std::move(coeff)});

        if (p.done() || (p.peek().kind == Token::symbol && p.peek().text == ","))
            break;
        if (!(p.peek().kind == Token::symbol && (p.peek().text == "+" || p.peek().text == "-")))
            syntax_error(p.peek(), "expected '+', '-' or end of polynomial");
    }
    return Polynomial::from_terms(std::move(terms), field);
}

void check_relation(const Polynomial& r, const AlgebraPresentation& a, const Field& field) {
    if (r.is_zero())
        fail(ErrorKind::validation, "relation reduces to zero");
    if (!r.is_homogeneous())
        fail(ErrorKind::validation, "inhomogeneous relation");
    if (r.degree() < 2)
        fail(ErrorKind::validation, "relation of degree " + std::to_string(r.degree()) +
                                        " (must be at least 2)");
    if (a.quiver) {
        int s = a.source_of(r.terms().front().word);
        int t = a.target_of(r.terms().front().word);
        for (const auto& term : r.terms())
            if (a.source_of(term.word) != s || a.target_of(term.word) != t)
                fail(ErrorKind::validation, "relation terms have mismatched endpoints");
    }
    (void)field;
}

Polynomial make_monic(const Polynomial& r, const Field& field) {
    return r.scaled(field.inv(r.leading().coeff), field);
}

} // namespace

AlgebraPresentation parse_algebra(const std::string& text) {
    auto stmts = Lexer(text).statements();
    if (stmts.empty())
        fail(ErrorKind::syntax, "empty presentation");

    AlgebraPresentation a;
    bool have_field = false, have_gens = false;
    std::vector<std::vector<Token>> rel_stmts;

    for (const auto& stmt : stmts) {
        StmtParser p(stmt);
        Token head = p.next("keyword");
        if (head.kind != Token::ident)
            syntax_error(head, "expected keyword");
        if (head.text == "field") {
            if (have_field)
                syntax_error(head, "duplicate field declaration");
            Token t = p.next("field name");
            if (t.kind == Token::ident && t.text == "Q") {
                a.field.characteristic = 0;
            } else if (t.kind == Token::ident && t.text == "GF") {
                p.expect_symbol("(");
                long q = p.expect_int();
                p.expect_symbol(")");
                if (!is_prime(q) || q >= (1L << 31))
                    fail(ErrorKind::validation,
                         "characteristic " + std::to_string(q) + " is not a prime below 2^31");
                a.field.characteristic = q;
            } else {
                syntax_error(t, "expected Q or GF(p)");
            }
            have_field = true;
        } else if (head.text == "gens") {
            if (a.quiver)
                syntax_error(head, "'gens' is not allowed in quiver mode");
            do {
                std::string name = p.expect_ident();
                a.gens.names.push_back(name);
                a.gens.source.push_back(0);
                a.gens.target.push_back(0);
            } while (p.accept_symbol(","));
            have_gens = true;
        } else if (head.text == "vertices") {
            if (have_gens)
                syntax_error(head, "'vertices' is not allowed in connected mode");
            a.quiver = true;
            long n = p.expect_int();
            if (n < 1)
                fail(ErrorKind::validation, "vertex count must be positive");
            a.vertices = static_cast<int>(n);
        } else if (head.text == "arrow") {
            if (have_gens)
                syntax_error(head, "'arrow' is not allowed in connected mode");
            a.quiver = true;
            std::string name = p.expect_ident();
            long s = p.expect_int(), t = p.expect_int();
            a.gens.names.push_back(name);
            a.gens.source.push_back(static_cast<int>(s) - 1);
            a.gens.target.push_back(static_cast<int>(t) - 1);
        } else if (head.text == "rel") {
            rel_stmts.push_back(stmt);
        } else {
            syntax_error(head, "unknown keyword '" + head.text + "'");
        }
        if (head.text != "rel" && !p.done())
            syntax_error(p.peek(), "trailing tokens in statement");
    }

    if (!have_field)
        fail(ErrorKind::syntax, "missing field declaration");
    if (a.quiver) {
        for (int g = 0; g < a.num_gens(); ++g)
            if (a.gens.source[g] < 0 || a.gens.source[g] >= a.vertices || a.gens.target[g] < 0 ||
                a.gens.target[g] >= a.vertices)
                fail(ErrorKind::validation, "arrow '" + a.gens.names[g] + "' has an out-of-range vertex");
    }
    for (int g = 0; g < a.num_gens(); ++g)
        for (int h = g + 1; h < a.num_gens(); ++h)
            if (a.gens.names[g] == a.gens.names[h])
                fail(ErrorKind::validation, "duplicate generator name '" + a.gens.names[g] + "'");

    Field field(a.field);
    for (const auto& stmt : rel_stmts) {
        StmtParser p(stmt);
        p.next("rel");
        Polynomial r = parse_polynomial(p, a, field, 0);
        if (!p.done())
            syntax_error(p.peek(), "trailing tokens after relation");
        check_relation(r, a, field);
        a.relations.push_back(make_monic(r, field));
    }
    return a;
}

ModulePresentation parse_module(const std::string& text, const AlgebraPresentation& a) {
    auto stmts = Lexer(text).statements();
    Field field(a.field);
    ModulePresentation m;
    bool have_free = false;

    for (const auto& stmt : stmts) {
        StmtParser p(stmt);
        Token head = p.next("keyword");
        if (head.kind != Token::ident)
            syntax_error(head, "expected keyword");
        if (head.text == "free") {
            if (have_free)
                syntax_error(head, "duplicate free declaration");
            do {
                long d = p.expect_int();
                if (d < 0)
                    fail(ErrorKind::validation, "generator degrees must be nonnegative");
                int v = 0;
                if (p.accept_symbol("@")) {
                    if (!a.quiver)
                        syntax_error(head, "vertex annotation requires quiver mode");
                    v = static_cast<int>(p.expect_int()) - 1;
                    if (v < 0 || v >= a.vertices)
                        fail(ErrorKind::validation, "generator vertex out of range");
                } else if (a.quiver) {
                    fail(ErrorKind::validation,
                         "quiver module generators need a vertex: use 'free d@v'");
                }
                if (!m.gen_degrees.empty() && m.gen_degrees.back() > d)
                    fail(ErrorKind::validation, "generator degrees must be nondecreasing");
                m.gen_degrees.push_back(static_cast<int>(d));
                m.gen_vertices.push_back(v);
            } while (p.accept_symbol(","));
            have_free = true;
            if (!p.done())
                syntax_error(p.peek(), "trailing tokens in free declaration");
        } else if (head.text == "rel") {
            if (!have_free)
                syntax_error(head, "'rel' before 'free' declaration");
            std::vector<Polynomial> row;
            for (int g = 0; g < m.num_gens(); ++g) {
                if (g > 0)
                    p.expect_symbol(",");
                row.push_back(parse_polynomial(p, a, field, m.gen_vertices[g]));
            }
            if (!p.done())
                syntax_error(p.peek(), "row has more entries than module generators");

            int row_degree = -1;
            for (int g = 0; g < m.num_gens(); ++g) {
                const Polynomial& e = row[g];
                if (e.is_zero())
                    continue;
                if (!e.is_homogeneous())
                    fail(ErrorKind::validation, "inhomogeneous row entry");
                int d = e.degree() + m.gen_degrees[g];
                if (row_degree == -1)
                    row_degree = d;
                else if (row_degree != d)
                    fail(ErrorKind::validation, "relation row is not homogeneous");
                if (a.quiver)
                    for (const auto& t : e.terms())
                        if (a.target_of(t.word) != m.gen_vertices[g])
                            fail(ErrorKind::validation,
                                 "row entry does not land in the column's vertex component");
            }
            if (row_degree == -1)
                fail(ErrorKind::validation, "zero relation row");
            m.rows.push_back(std::move(row));
            m.row_degrees.push_back(row_degree);
        } else {
            syntax_error(head, "unknown keyword '" + head.text + "'");
        }
    }
    if (!have_free)
        fail(ErrorKind::syntax, "module file lacks a 'free' declaration");
    return m;
}

ModulePresentation trivial_module(const AlgebraPresentation& a) {
    ModulePresentation m;
    for (int v = 0; v < a.vertices; ++v) {
        m.gen_degrees.push_back(0);
        m.gen_vertices.push_back(v);
    }
    for (int g = 0; g < a.num_gens(); ++g) {
        std::vector<Polynomial> row(a.vertices);
        row[a.gens.target[g]] = Polynomial::monomial(single_word(g), 1);
        m.rows.push_back(std::move(row));
        m.row_degrees.push_back(1);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Printing

std::string print_word(const Word& w, const AlgebraPresentation& a) {
    if (w.empty())
        return a.quiver ? "@" + std::to_string(w.vtx + 1) : "1";
    std::string s;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i)
            s += "*";
        s += a.gens.names[w.letters[i]];
    }
    return s;
}

std::string print_polynomial(const Polynomial& p, const AlgebraPresentation& a) {
    if (p.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
        Scalar c = t.coeff;
        if (first) {
            if (c < 0) {
                s += "-";
                c = -c;
            }
        } else {
            if (c < 0) {
                s += " - ";
                c = -c;
            } else {
                s += " + ";
            }
        }
        first = false;
        if (t.word.empty()) {
            s += c.get_str();
        } else {
            if (c != 1)
                s += c.get_str() + "*";
            s += print_word(t.word, a);
        }
    }
    return s;
}

std::string print_algebra(const AlgebraPresentation& a) {
    std::ostringstream out;
    if (a.field.characteristic == 0)
        out << "field Q\n";
    else
        out << "field GF(" << a.field.characteristic << ")\n";
    if (a.quiver) {
        out << "vertices " << a.vertices << "\n";
        for (int g = 0; g < a.num_gens(); ++g)
            out << "arrow " << a.gens.names[g] << " " << a.gens.source[g] + 1 << " "
                << a.gens.target[g] + 1 << "\n";
    } else if (a.num_gens() > 0) {
        out << "gens ";
        for (int g = 0; g < a.num_gens(); ++g)
            out << (g ? "," : "") << a.gens.names[g];
        out << "\n";
    }
    for (const auto& r : a.relations)
        out << "rel " << print_polynomial(r, a) << "\n";
    return out.str();
}

std::string print_module(const ModulePresentation& m, const AlgebraPresentation& a) {
    std::ostringstream out;
    out << "free ";
    for (int g = 0; g < m.num_gens(); ++g) {
        out << (g ? "," : "") << m.gen_degrees[g];
        if (a.quiver)
            out << "@" << m.gen_vertices[g] + 1;
    }
    out << "\n";
    for (const auto& row : m.rows) {
        out << "rel ";
        for (size_t g = 0; g < row.size(); ++g)
            out << (g ? "," : "") << print_polynomial(row[g], a);
        out << "\n";
    }
    return out.str();
}

bool structurally_equal(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    if (!(a.field == b.field) || a.quiver != b.quiver || a.vertices != b.vertices)
        return false;
    if (a.gens.names != b.gens.names || a.gens.source != b.gens.source ||
        a.gens.target != b.gens.target)
        return false;
    if (a.relations.size() != b.relations.size())
        return false;
    for (size_t i = 0; i < a.relations.size(); ++i)
        if (!(a.relations[i] == b.relations[i]))
            return false;
    return true;
}

} // namespace koszul
