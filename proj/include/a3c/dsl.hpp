#pragma once

#include <cctype>
#include <sstream>

#include "a3c/catalog.hpp"

namespace a3c {
namespace dsl {

struct SyntaxError : std::runtime_error {
    SyntaxError(int line, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line, col;
};
struct DuplicateFrameName : SyntaxError {
    DuplicateFrameName(int line, int col, const std::string& n)
        : SyntaxError(line, col, "duplicate frame name: " + n) {}
};
struct IndexOutOfRange : SyntaxError {
    IndexOutOfRange(int line, int col, const std::string& msg) : SyntaxError(line, col, msg) {}
};
struct JacobiFailure : std::runtime_error {
    JacobiFailure(int a, int b, int c)
        : std::runtime_error("brackets violate the Jacobi identity on (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")") {}
};

/// One bracket value term: coefficient × frame vector.
struct BracketTerm {
    Scalar coeff;
    int frame_index; // 1-based
    friend bool operator==(const BracketTerm& x, const BracketTerm& y) {
        return x.frame_index == y.frame_index && x.coeff == y.coeff;
    }
};

struct BracketDecl {
    int a = 0, b = 0; // 1-based frame indices, a < b not required in source
    std::vector<BracketTerm> terms;
    friend bool operator==(const BracketDecl& x, const BracketDecl& y) {
        return x.a == y.a && x.b == y.b && x.terms == y.terms;
    }
};

/// Parsed algebra document; the in-memory form of the .alg format.
struct AlgebraDoc {
    std::string name;
    std::vector<Param> params;
    int dim = 0;
    std::vector<std::string> frame;
    std::vector<BracketDecl> brackets;
    bool standard_structure = true;
    std::vector<Mat> explicit_phi; // three matrices when not standard

    friend bool operator==(const AlgebraDoc& x, const AlgebraDoc& y) {
        if (x.name != y.name || x.dim != y.dim || x.frame != y.frame ||
            x.standard_structure != y.standard_structure || x.brackets.size() != y.brackets.size())
            return false;
        for (std::size_t i = 0; i < x.params.size(); ++i)
            if (x.params[i].name != y.params[i].name || x.params[i].positive != y.params[i].positive)
                return false;
        for (std::size_t i = 0; i < x.brackets.size(); ++i)
            if (!(x.brackets[i] == y.brackets[i])) return false;
        if (!x.standard_structure)
            for (int i = 0; i < 3; ++i)
                if (!is_zero(Mat(x.explicit_phi[i] - y.explicit_phi[i]))) return false;
        return true;
    }
};

namespace detail {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
                continue;
            }
            break;
        }
        if (pos_ >= src_.size()) {
            tok_ = {Token::End, "", line_, col_};
            return;
        }
        int l = line_, c0 = col_;
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                s += src_[pos_++];
                ++col_;
            }
            tok_ = {Token::Ident, s, l, c0};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                s += src_[pos_++];
                ++col_;
            }
            tok_ = {Token::Number, s, l, c0};
            return;
        }
        ++pos_;
        ++col_;
        tok_ = {Token::Punct, std::string(1, c), l, c0};
    }

    std::string src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

} // namespace detail

/// Recursive-descent parser for the .alg grammar. Every rejection carries a
/// source location; no input text can crash the parser.
class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    AlgebraDoc parse() {
        AlgebraDoc doc;
        expect_ident("algebra");
        doc.name = expect(detail::Token::Ident, "algebra name").text;
        expect_punct("{");

        expect_ident("params");
        expect_punct(":");
        if (!peek_punct(";")) {
            while (true) {
                auto t = expect(detail::Token::Ident, "parameter name");
                bool positive = false;
                if (peek_punct(">")) {
                    next();
                    auto z = expect(detail::Token::Number, "0");
                    if (z.text != "0") throw SyntaxError(z.line, z.col, "only '>0' is understood");
                    positive = true;
                }
                for (auto& p : doc.params)
                    if (p.name == t.text)
                        throw SyntaxError(t.line, t.col, "duplicate parameter: " + t.text);
                doc.params.push_back({t.text, positive});
                if (peek_punct(",")) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect_punct(";");

        expect_ident("dim");
        expect_punct(":");
        auto d = expect(detail::Token::Number, "dimension");
        doc.dim = std::stoi(d.text);
        expect_punct(";");

        expect_ident("frame");
        expect_punct(":");
        while (lex_.peek().kind == detail::Token::Ident) {
            auto t = next();
            for (auto& n : doc.frame)
                if (n == t.text) throw DuplicateFrameName(t.line, t.col, t.text);
            doc.frame.push_back(t.text);
        }
        expect_punct(";");
        if (static_cast<int>(doc.frame.size()) != doc.dim) {
            auto& t = lex_.peek();
            throw SyntaxError(t.line, t.col,
                              "frame has " + std::to_string(doc.frame.size()) + " names but dim is " +
                                  std::to_string(doc.dim));
        }

        expect_ident("brackets");
        expect_punct(":");
        while (peek_punct("[") || peek_punct(";")) {
            if (peek_punct(";")) { // tolerate a bare terminator for the block
                next();
                break;
            }
            doc.brackets.push_back(parse_bracket(doc));
        }

        expect_ident("structure");
        expect_punct(":");
        if (lex_.peek().kind == detail::Token::Ident && lex_.peek().text == "standard") {
            next();
            doc.standard_structure = true;
            if (doc.dim < 3 || (doc.dim - 3) % 4 != 0) {
                auto& t = lex_.peek();
                throw SyntaxError(t.line, t.col, "standard structure needs dim = 4n+3");
            }
        } else {
            expect_ident("explicit");
            expect_punct("{");
            doc.standard_structure = false;
            for (int i = 1; i <= 3; ++i) {
                auto t = expect(detail::Token::Ident, "phi" + std::to_string(i));
                if (t.text != "phi" + std::to_string(i))
                    throw SyntaxError(t.line, t.col, "expected phi" + std::to_string(i));
                expect_punct(":");
                doc.explicit_phi.push_back(parse_matrix(doc));
                expect_punct(";");
            }
            expect_punct("}");
        }
        expect_punct(";");
        expect_punct("}");
        if (lex_.peek().kind != detail::Token::End) {
            auto& t = lex_.peek();
            throw SyntaxError(t.line, t.col, "trailing input after algebra block");
        }
        return doc;
    }

private:
    detail::Token next() { return lex_.next(); }
    bool peek_punct(const std::string& p) const {
        return lex_.peek().kind == detail::Token::Punct && lex_.peek().text == p;
    }
    detail::Token expect(detail::Token::Kind k, const std::string& what) {
        auto t = next();
        if (t.kind != k)
            throw SyntaxError(t.line, t.col, "expected " + what + ", found '" + t.text + "'");
        return t;
    }
    void expect_punct(const std::string& p) {
        auto t = next();
        if (t.kind != detail::Token::Punct || t.text != p)
            throw SyntaxError(t.line, t.col, "expected '" + p + "', found '" + t.text + "'");
    }
    void expect_ident(const std::string& kw) {
        auto t = next();
        if (t.kind != detail::Token::Ident || t.text != kw)
            throw SyntaxError(t.line, t.col, "expected '" + kw + "', found '" + t.text + "'");
    }

    int frame_index(const AlgebraDoc& doc, const detail::Token& t) const {
        for (std::size_t i = 0; i < doc.frame.size(); ++i)
            if (doc.frame[i] == t.text) return static_cast<int>(i) + 1;
        throw SyntaxError(t.line, t.col, "unknown frame name: " + t.text);
    }

    BracketDecl parse_bracket(const AlgebraDoc& doc) {
        expect_punct("[");
        BracketDecl decl;
        auto ta = expect(detail::Token::Ident, "frame name");
        decl.a = frame_index(doc, ta);
        expect_punct(",");
        auto tb = expect(detail::Token::Ident, "frame name");
        decl.b = frame_index(doc, tb);
        if (decl.a == decl.b) throw SyntaxError(tb.line, tb.col, "bracket of a vector with itself");
        expect_punct("]");
        expect_punct("=");
        bool negate = false;
        if (peek_punct("-")) {
            next();
            negate = true;
        }
        while (true) {
            BracketTerm term = parse_term(doc);
            if (negate) term.coeff = -term.coeff;
            decl.terms.push_back(std::move(term));
            if (peek_punct("+")) {
                next();
                negate = false;
                continue;
            }
            if (peek_punct("-")) {
                next();
                negate = true;
                continue;
            }
            break;
        }
        expect_punct(";");
        return decl;
    }

    /// term := factor ('*' factor)*, with exactly one frame-name factor.
    BracketTerm parse_term(const AlgebraDoc& doc) {
        Scalar coeff(1);
        int frame = 0;
        auto t0 = lex_.peek();
        while (true) {
            auto t = lex_.peek();
            if (t.kind == detail::Token::Ident) {
                bool is_frame = false;
                for (auto& n : doc.frame)
                    if (n == t.text) is_frame = true;
                if (is_frame) {
                    if (frame != 0)
                        throw SyntaxError(t.line, t.col, "bracket term must be linear in frame vectors");
                    frame = frame_index(doc, next());
                } else {
                    bool known = false;
                    for (auto& p : doc.params)
                        if (p.name == t.text) known = true;
                    if (!known)
                        throw SyntaxError(t.line, t.col, "unknown frame name: " + t.text);
                    next();
                    coeff *= Scalar::param(t.text);
                }
            } else if (t.kind == detail::Token::Number) {
                next();
                coeff *= parse_number_tail(t);
            } else if (t.kind == detail::Token::Punct && t.text == "(") {
                next();
                coeff *= parse_scalar_expr(doc);
                expect_punct(")");
            } else {
                throw SyntaxError(t.line, t.col, "expected a bracket term");
            }
            if (peek_punct("*")) {
                next();
                continue;
            }
            break;
        }
        if (frame == 0)
            throw SyntaxError(t0.line, t0.col, "bracket term needs exactly one frame vector");
        return {coeff, frame};
    }

    /// Scalar-only expression grammar: + − * / with parentheses, rationals,
    /// parameter identifiers.
    Scalar parse_scalar_expr(const AlgebraDoc& doc) {
        Scalar acc = parse_scalar_product(doc);
        while (peek_punct("+") || peek_punct("-")) {
            bool minus = next().text == "-";
            Scalar rhs = parse_scalar_product(doc);
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }
    Scalar parse_scalar_product(const AlgebraDoc& doc) {
        Scalar acc = parse_scalar_atom(doc);
        while (peek_punct("*") || peek_punct("/")) {
            bool div = next().text == "/";
            Scalar rhs = parse_scalar_atom(doc);
            if (div) {
                if (rhs.is_zero()) {
                    auto& t = lex_.peek();
                    throw SyntaxError(t.line, t.col, "division by zero");
                }
                acc = acc / rhs;
            } else {
                acc = acc * rhs;
            }
        }
        return acc;
    }
    Scalar parse_scalar_atom(const AlgebraDoc& doc) {
        auto t = next();
        if (t.kind == detail::Token::Punct && t.text == "-") return -parse_scalar_atom(doc);
        if (t.kind == detail::Token::Punct && t.text == "(") {
            Scalar inner = parse_scalar_expr(doc);
            expect_punct(")");
            return inner;
        }
        if (t.kind == detail::Token::Number) return parse_number_tail(t);
        if (t.kind == detail::Token::Ident) {
            for (auto& p : doc.params)
                if (p.name == t.text) return Scalar::param(t.text);
            throw SyntaxError(t.line, t.col, "unknown parameter: " + t.text);
        }
        throw SyntaxError(t.line, t.col, "expected a scalar expression");
    }
    /// Integer token, optionally followed by '/denominator'.
    Scalar parse_number_tail(const detail::Token& t) {
        std::int64_t num = 0;
        try {
            num = std::stoll(t.text);
        } catch (...) {
            throw SyntaxError(t.line, t.col, "number out of range");
        }
        if (peek_punct("/")) {
            // look ahead: a rational literal only when a number follows
            auto save = lex_;
            next();
            if (lex_.peek().kind == detail::Token::Number) {
                auto d = next();
                std::int64_t den = std::stoll(d.text);
                if (den == 0) throw SyntaxError(d.line, d.col, "zero denominator");
                return Scalar(Rational(num, den));
            }
            lex_ = save;
        }
        return Scalar(Rational(num));
    }

    Mat parse_matrix(const AlgebraDoc& doc) {
        expect_punct("[");
        std::vector<std::vector<Scalar>> rows;
        while (true) {
            expect_punct("[");
            std::vector<Scalar> row;
            if (!peek_punct("]")) {
                while (true) {
                    row.push_back(parse_scalar_expr(doc));
                    if (peek_punct(",")) {
                        next();
                        continue;
                    }
                    break;
                }
            }
            expect_punct("]");
            rows.push_back(std::move(row));
            if (peek_punct(",")) {
                next();
                continue;
            }
            break;
        }
        expect_punct("]");
        auto& t = lex_.peek();
        if (static_cast<int>(rows.size()) != doc.dim)
            throw IndexOutOfRange(t.line, t.col, "matrix needs dim rows");
        Mat m = zero_mat(doc.dim);
        for (int r = 0; r < doc.dim; ++r) {
            if (static_cast<int>(rows[r].size()) != doc.dim)
                throw IndexOutOfRange(t.line, t.col, "matrix row needs dim entries");
            for (int c = 0; c < doc.dim; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    detail::Lexer lex_;
};

inline AlgebraDoc parse(const std::string& text) { return Parser(text).parse(); }

/// Canonical text form; parse(print(doc)) == doc.
inline std::string print(const AlgebraDoc& doc) {
    std::ostringstream os;
    os << "algebra " << doc.name << " {\n";
    os << "  params:";
    for (std::size_t i = 0; i < doc.params.size(); ++i) {
        os << (i ? ", " : " ") << doc.params[i].name;
        if (doc.params[i].positive) os << ">0";
    }
    os << ";\n";
    os << "  dim: " << doc.dim << ";\n";
    os << "  frame:";
    for (auto& n : doc.frame) os << " " << n;
    os << ";\n";
    os << "  brackets:\n";
    for (auto& b : doc.brackets) {
        os << "    [" << doc.frame[b.a - 1] << "," << doc.frame[b.b - 1] << "] = ";
        for (std::size_t i = 0; i < b.terms.size(); ++i) {
            if (i) os << " + ";
            os << "(" << b.terms[i].coeff.str() << ")*" << doc.frame[b.terms[i].frame_index - 1];
        }
        os << ";\n";
    }
    os << "  structure: ";
    if (doc.standard_structure) {
        os << "standard";
    } else {
        os << "explicit {\n";
        for (int i = 0; i < 3; ++i) {
            os << "    phi" << i + 1 << ": [";
            for (int r = 0; r < doc.dim; ++r) {
                os << (r ? ",[" : "[");
                for (int c = 0; c < doc.dim; ++c)
                    os << (c ? "," : "") << "(" << doc.explicit_phi[i](r, c).str() << ")";
                os << "]";
            }
            os << "];\n";
        }
        os << "  }";
    }
    os << ";\n}\n";
    return os.str();
}

/// Build the structure a document describes; Jacobi is enforced here.
inline A3CStructure build(const AlgebraDoc& doc) {
    ConstantBrackets br(doc.dim);
    for (auto& decl : doc.brackets) {
        Vec v = zero_vec(doc.dim);
        for (auto& t : decl.terms) v(t.frame_index - 1) += t.coeff;
        Vec existing = br.bracket(decl.a, decl.b);
        br.set(decl.a, decl.b, Vec(existing + v));
    }
    auto jw = jacobi_check(br);
    if (!jw.ok) throw JacobiFailure(jw.a, jw.b, jw.c);
    ParamSet ps;
    for (auto& p : doc.params) ps.declare(p);
    auto geom = std::make_shared<LieFrameGeometry>(FrameSpace(doc.frame), std::move(br), std::move(ps));
    std::array<Mat, 3> phi;
    if (doc.standard_structure) {
        phi = catalog::standard_phi((doc.dim - 3) / 4);
    } else {
        for (int i = 0; i < 3; ++i) phi[i] = doc.explicit_phi[i];
    }
    return A3CStructure{std::move(geom), std::move(phi)};
}

/// Canonical document for a catalog-style structure (used for round trips
/// and to ship the examples as .alg files).
inline AlgebraDoc document_from(const A3CStructure& s, const std::string& name) {
    AlgebraDoc doc;
    doc.name = name;
    for (auto& p : s.geometry->params().params()) doc.params.push_back(p);
    doc.dim = s.dim();
    doc.frame = s.geometry->frame().names;
    for (int a = 1; a <= doc.dim; ++a)
        for (int b = a + 1; b <= doc.dim; ++b) {
            const Vec& v = s.geometry->brackets().bracket(a, b);
            BracketDecl decl;
            decl.a = a;
            decl.b = b;
            for (int c = 1; c <= doc.dim; ++c)
                if (!v(c - 1).is_zero()) decl.terms.push_back({v(c - 1), c});
            if (!decl.terms.empty()) doc.brackets.push_back(std::move(decl));
        }
    doc.standard_structure = true;
    return doc;
}

} // namespace dsl
} // namespace a3c
