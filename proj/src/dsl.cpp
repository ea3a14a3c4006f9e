#include "entwine/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ent::dsl {

std::string format(const Diagnostic& d, std::string_view file) {
    std::ostringstream os;
    if (!file.empty()) os << file << ':';
    os << d.span.line << ':' << d.span.column << ": " << d.kind << " error: " << d.message;
    return os.str();
}

namespace {

// ---------------------------------------------------------------- lexing

enum class Tok { ident, number, lbrace, rbrace, colon, semi, star, plus, minus, arrow, lparen, rparen, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Span span;
};

Span join(const Span& a, const Span& b) {
    Span s = a;
    s.length = b.offset + b.length - a.offset;
    return s;
}

class Lexer {
public:
    Lexer(std::string_view text, std::vector<Diagnostic>& diags) : text_(text), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            const std::size_t start = pos_, line = line_, col = col_;
            const char c = text_[pos_];
            auto make = [&](Tok k) {
                Token t{k, std::string(text_.substr(start, pos_ - start)), Span{line, col, start, pos_ - start}};
                out.push_back(std::move(t));
            };
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                    advance();
                make(Tok::ident);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                digits();
                if (pos_ < text_.size() && text_[pos_] == '/') {
                    advance();
                    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                        diags_.push_back({"lexical", "malformed rational literal", Span{line, col, start, pos_ - start}});
                        continue;
                    }
                    digits();
                }
                if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    while (pos_ < text_.size() &&
                           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                        advance();
                    diags_.push_back({"lexical", "identifier may not start with a digit", Span{line, col, start, pos_ - start}});
                    continue;
                }
                make(Tok::number);
            } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                advance();
                advance();
                make(Tok::arrow);
            } else {
                Tok k;
                switch (c) {
                    case '{': k = Tok::lbrace; break;
                    case '}': k = Tok::rbrace; break;
                    case ':': k = Tok::colon; break;
                    case ';': k = Tok::semi; break;
                    case '*': k = Tok::star; break;
                    case '+': k = Tok::plus; break;
                    case '-': k = Tok::minus; break;
                    case '(': k = Tok::lparen; break;
                    case ')': k = Tok::rparen; break;
                    default: {
                        advance();
                        // Swallow the rest of a multi-byte UTF-8 sequence.
                        while (pos_ < text_.size() && (static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80) ++pos_;
                        std::string shown = std::string(text_.substr(start, pos_ - start));
                        diags_.push_back({"lexical", "unexpected character '" + shown + "'",
                                          Span{line, col, start, pos_ - start}});
                        continue;
                    }
                }
                advance();
                make(k);
            }
        }
        out.push_back(Token{Tok::end, "", Span{line_, col_, text_.size(), 0}});
        return out;
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
    void digits() {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    }
    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------- raw syntax tree

struct RawItem {
    std::vector<Token> toks;
    Span span;
};

struct RawKey {
    std::vector<Token> words;
    Span span;
    std::vector<RawItem> items;
};

struct RawBlock {
    std::string kind;
    Token name;
    std::vector<Token> header;
    Span span;
    std::vector<RawKey> keys;
};

struct RawFile {
    std::vector<std::pair<std::vector<Token>, Span>> fields;
    std::vector<RawBlock> blocks;
};

const std::vector<std::string> kKinds = {"coalgebra", "hopf", "category", "coactions", "entwining", "module", "phi"};

bool is_kind(const Token& t) {
    return t.kind == Tok::ident && std::find(kKinds.begin(), kKinds.end(), t.text) != kKinds.end();
}

std::string describe(const Token& t) { return t.kind == Tok::end ? "end of input" : "'" + t.text + "'"; }

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : t_(std::move(toks)), diags_(diags) {}

    RawFile run() {
        RawFile file;
        while (peek().kind != Tok::end) {
            const Token& t = peek();
            if (t.kind == Tok::ident && t.text == "field") {
                const Token start = next();
                std::vector<Token> body;
                while (peek().kind != Tok::semi && peek().kind != Tok::end && peek().kind != Tok::lbrace) body.push_back(next());
                if (peek().kind != Tok::semi) {
                    error(peek(), "expected ';' after field declaration");
                    recover_top();
                    continue;
                }
                const Token semi = next();
                file.fields.emplace_back(std::move(body), join(start.span, semi.span));
                continue;
            }
            RawBlock b;
            if (is_kind(t) && peek(1).kind == Tok::ident) {
                b.kind = next().text;
                b.name = next();
                b.span = t.span;
            } else if (t.kind == Tok::ident && is_kind(peek(1))) {
                b.name = next();
                b.kind = next().text;
                b.span = b.name.span;
            } else {
                error(t, "expected a field declaration or a block, found " + describe(t));
                recover_top();
                continue;
            }
            while (peek().kind != Tok::lbrace && peek().kind != Tok::end && peek().kind != Tok::semi &&
                   peek().kind != Tok::rbrace)
                b.header.push_back(next());
            if (peek().kind != Tok::lbrace) {
                error(peek(), "expected '{' after " + b.kind + " header");
                recover_top();
                continue;
            }
            next();
            if (!body(b)) continue;
            file.blocks.push_back(std::move(b));
        }
        return file;
    }

private:
    const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
    Token next() {
        Token t = peek();
        if (i_ < t_.size() - 1) ++i_;
        return t;
    }
    void error(const Token& t, const std::string& msg) { diags_.push_back({"syntax", msg, t.span}); }

    // Skip to the end of the current top-level construct.
    void recover_top() {
        int depth = 0;
        while (peek().kind != Tok::end) {
            const Tok k = next().kind;
            if (k == Tok::lbrace) ++depth;
            if (k == Tok::rbrace && --depth <= 0) return;
            if (k == Tok::semi && depth == 0) return;
        }
    }

    bool key_ahead() const {
        std::size_t k = 0;
        while (peek(k).kind == Tok::ident || peek(k).kind == Tok::star) ++k;
        return k > 0 && peek(k).kind == Tok::colon;
    }

    // Parses keys up to the closing brace. Returns false when the block was abandoned.
    bool body(RawBlock& b) {
        while (true) {
            const Token& t = peek();
            if (t.kind == Tok::rbrace) {
                b.span = join(b.span, next().span);
                return true;
            }
            if (t.kind == Tok::end) {
                diags_.push_back({"syntax", "unterminated " + b.kind + " block '" + b.name.text + "'", b.span});
                return false;
            }
            if (!key_ahead()) {
                error(t, "expected a key, found " + describe(t));
                skip_item();
                continue;
            }
            RawKey key;
            while (peek().kind != Tok::colon) key.words.push_back(next());
            key.span = join(key.words.front().span, next().span);
            while (peek().kind != Tok::rbrace && peek().kind != Tok::end && !key_ahead()) {
                RawItem item;
                while (peek().kind != Tok::semi && peek().kind != Tok::rbrace && peek().kind != Tok::end)
                    item.toks.push_back(next());
                if (peek().kind != Tok::semi) {
                    error(peek(), "expected ';', found " + describe(peek()));
                    break;
                }
                const Token semi = next();
                key.span = join(key.span, semi.span);
                if (item.toks.empty()) continue;
                item.span = join(item.toks.front().span, item.toks.back().span);
                key.items.push_back(std::move(item));
            }
            b.keys.push_back(std::move(key));
        }
    }

    void skip_item() {
        while (peek().kind != Tok::semi && peek().kind != Tok::rbrace && peek().kind != Tok::end) next();
        if (peek().kind == Tok::semi) next();
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
    std::vector<Diagnostic>& diags_;
};

// ---------------------------------------------------------------- resolution

// A named basis used to decode factors of tensor entries.
struct Space {
    std::string label;
    std::vector<std::string> names;

    std::optional<std::size_t> find(const std::string& n) const {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names.begin());
    }
};

struct Term {
    Scalar coef;
    std::vector<Token> factors;
    Span span;
};

std::size_t tensor_index(const std::vector<const Space*>& spaces, const std::vector<std::size_t>& idx) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < spaces.size(); ++i) r = r * spaces[i]->names.size() + idx[i];
    return r;
}

std::size_t tensor_size(const std::vector<const Space*>& spaces) {
    std::size_t r = 1;
    for (const Space* s : spaces) r *= s->names.size();
    return r;
}

class Builder {
public:
    Builder(std::vector<Diagnostic>& diags) : diags_(diags) {}

    void diag(const std::string& kind, const Span& s, const std::string& msg) { diags_.push_back({kind, msg, s}); }
    std::size_t errors() const { return diags_.size(); }

    std::optional<Scalar> scalar(const Token& t, bool negative) {
        try {
            mpq_class q(t.text);
            q.canonicalize();
            if (negative) q = -q;
            return Scalar(field, q);
        } catch (const std::exception&) {
            diag("syntax", t.span, "literal " + t.text + " is not defined over " + field.name());
            return std::nullopt;
        }
    }

    // lincomb := ['-'] term (('+'|'-') term)*, term := [number ['*']] [name ('*' name)*]
    std::optional<std::vector<Term>> lincomb(const std::vector<Token>& toks, std::size_t b, std::size_t e,
                                             const Span& where) {
        std::vector<Term> out;
        std::size_t i = b;
        if (i == e) {
            diag("syntax", where, "expected a linear combination");
            return std::nullopt;
        }
        bool negative = false;
        if (toks[i].kind == Tok::minus) {
            negative = true;
            ++i;
        } else if (toks[i].kind == Tok::plus) {
            ++i;
        }
        while (true) {
            if (i == e) {
                diag("syntax", toks[e - 1].span, "expected a term after '" + toks[e - 1].text + "'");
                return std::nullopt;
            }
            Term term{Scalar::one(field), {}, toks[i].span};
            if (negative) term.coef = -term.coef;
            bool any = false;
            if (toks[i].kind == Tok::number) {
                auto s = scalar(toks[i], negative);
                if (!s) return std::nullopt;
                term.coef = *s;
                ++i;
                any = true;
                if (i < e && toks[i].kind == Tok::star) {
                    ++i;
                    if (i == e || toks[i].kind != Tok::ident) {
                        diag("syntax", toks[i - 1].span, "expected a basis element after '*'");
                        return std::nullopt;
                    }
                }
            }
            if (i < e && toks[i].kind == Tok::ident) {
                term.factors.push_back(toks[i++]);
                while (i < e && toks[i].kind == Tok::star) {
                    ++i;
                    if (i == e || toks[i].kind != Tok::ident) {
                        diag("syntax", toks[i - 1].span, "expected a basis element after '*'");
                        return std::nullopt;
                    }
                    term.factors.push_back(toks[i++]);
                }
                any = true;
            }
            if (!any) {
                diag("syntax", toks[i].span, "expected a term, found '" + toks[i].text + "'");
                return std::nullopt;
            }
            term.span = join(term.span, toks[i - 1].span);
            out.push_back(std::move(term));
            if (i == e) return out;
            if (toks[i].kind != Tok::plus && toks[i].kind != Tok::minus) {
                diag("syntax", toks[i].span, "expected '+' or '-', found '" + toks[i].text + "'");
                return std::nullopt;
            }
            negative = toks[i].kind == Tok::minus;
            ++i;
        }
    }

    // Decodes a linear combination into a column over the tensor product of the spaces.
    std::optional<Matrix> vector(const std::vector<Token>& toks, std::size_t b, std::size_t e, const Span& where,
                                 const std::vector<const Space*>& spaces) {
        auto terms = lincomb(toks, b, e, where);
        if (!terms) return std::nullopt;
        Matrix v(field, tensor_size(spaces), 1);
        bool ok = true;
        for (const Term& t : *terms) {
            // A bare 0 is the zero vector in any space.
            if (t.factors.empty() && t.coef.is_zero() && !spaces.empty()) continue;
            if (t.factors.size() != spaces.size()) {
                diag("dimension", t.span,
                     "expected " + std::to_string(spaces.size()) + " tensor factor(s), found " +
                         std::to_string(t.factors.size()));
                ok = false;
                continue;
            }
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < spaces.size(); ++i) {
                auto k = spaces[i]->find(t.factors[i].text);
                if (!k) {
                    diag("reference", t.factors[i].span,
                         "unknown basis element '" + t.factors[i].text + "' in " + spaces[i]->label);
                    ok = false;
                    break;
                }
                idx.push_back(*k);
            }
            if (idx.size() == spaces.size()) v(tensor_index(spaces, idx), 0) += t.coef;
        }
        if (!ok) return std::nullopt;
        return v;
    }

    // Splits "lhs -> rhs" and returns the index of the arrow.
    std::optional<std::size_t> arrow(const RawItem& item) {
        for (std::size_t i = 0; i < item.toks.size(); ++i)
            if (item.toks[i].kind == Tok::arrow) {
                if (i == 0) {
                    diag("syntax", item.toks[i].span, "expected a basis element before '->'");
                    return std::nullopt;
                }
                return i;
            }
        diag("syntax", item.span, "expected an entry of the form 'lhs -> rhs'");
        return std::nullopt;
    }

    // lhs := name ('*' name)*
    std::optional<std::vector<Token>> product(const std::vector<Token>& toks, std::size_t e) {
        std::vector<Token> out;
        for (std::size_t i = 0; i < e; ++i) {
            if (i % 2 == 0) {
                if (toks[i].kind != Tok::ident) {
                    diag("syntax", toks[i].span, "expected a basis element, found '" + toks[i].text + "'");
                    return std::nullopt;
                }
                out.push_back(toks[i]);
            } else if (toks[i].kind != Tok::star) {
                diag("syntax", toks[i].span, "expected '*' or '->', found '" + toks[i].text + "'");
                return std::nullopt;
            }
        }
        if (e % 2 == 0) {
            diag("syntax", toks[e - 1].span, "expected a basis element after '*'");
            return std::nullopt;
        }
        return out;
    }

    std::optional<std::vector<std::size_t>> lookup(const std::vector<Token>& factors,
                                                   const std::vector<const Space*>& spaces) {
        if (factors.size() != spaces.size()) {
            diag("dimension", join(factors.front().span, factors.back().span),
                 "expected " + std::to_string(spaces.size()) + " factor(s) on the left of '->'");
            return std::nullopt;
        }
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < spaces.size(); ++i) {
            auto k = spaces[i]->find(factors[i].text);
            if (!k) {
                diag("reference", factors[i].span, "unknown basis element '" + factors[i].text + "' in " + spaces[i]->label);
                return std::nullopt;
            }
            idx.push_back(*k);
        }
        return idx;
    }

    // Fills columns of m from entries "lhs -> rhs" with lhs in the source spaces.
    void entries(const RawKey& key, Matrix& m, const std::vector<const Space*>& src,
                 const std::vector<const Space*>& dst, std::vector<bool>* written = nullptr) {
        std::vector<bool> seen(m.cols(), false);
        for (const RawItem& item : key.items) {
            auto a = arrow(item);
            if (!a) continue;
            auto lhs = product(item.toks, *a);
            if (!lhs) continue;
            auto idx = lookup(*lhs, src);
            if (!idx) continue;
            const std::size_t col = tensor_index(src, *idx);
            if (seen[col]) {
                diag("syntax", item.span, "duplicate entry for '" + item.toks.front().text + "'");
                continue;
            }
            seen[col] = true;
            auto v = vector(item.toks, *a + 1, item.toks.size(), item.span, dst);
            if (!v) continue;
            m.set_block(0, col, *v);
        }
        if (written) *written = seen;
    }

    std::vector<Token> names(const RawKey& key, bool allow_star = false) {
        std::vector<Token> out;
        for (const RawItem& item : key.items)
            for (const Token& t : item.toks) {
                if (t.kind == Tok::ident || (allow_star && t.kind == Tok::star))
                    out.push_back(t);
                else
                    diag("syntax", t.span, "expected a name, found '" + t.text + "'");
            }
        return out;
    }

    Field field;

private:
    std::vector<Diagnostic>& diags_;
};

std::string key_name(const RawKey& k) { return k.words.front().text; }

// Index of key words after the head, used for "hom X Y", "identity X", "space X".
struct KeySet {
    std::map<std::string, std::vector<const RawKey*>> by_head;
};

KeySet collect_keys(Builder& bld, const RawBlock& b, const std::vector<std::string>& allowed,
                    const std::vector<std::string>& pair_keys) {
    KeySet ks;
    for (const RawKey& k : b.keys) {
        const std::string head = key_name(k);
        const bool pair = std::find(pair_keys.begin(), pair_keys.end(), head) != pair_keys.end();
        if (std::find(allowed.begin(), allowed.end(), head) == allowed.end() && !pair) {
            bld.diag("syntax", k.words.front().span, "unknown key '" + head + "' in " + b.kind + " block");
            continue;
        }
        if (!pair && k.words.size() != 1) {
            bld.diag("syntax", k.words[1].span, "unexpected '" + k.words[1].text + "' after key '" + head + "'");
            continue;
        }
        if (!pair && !ks.by_head[head].empty()) {
            bld.diag("syntax", k.words.front().span, "duplicate key '" + head + "'");
            continue;
        }
        ks.by_head[head].push_back(&k);
    }
    return ks;
}

const RawKey* single(const KeySet& ks, const std::string& head) {
    auto it = ks.by_head.find(head);
    return it == ks.by_head.end() || it->second.empty() ? nullptr : it->second.front();
}

std::vector<const RawKey*> all(const KeySet& ks, const std::string& head) {
    auto it = ks.by_head.find(head);
    return it == ks.by_head.end() ? std::vector<const RawKey*>{} : it->second;
}

// Header arguments: "dim N", "on X", "coalgebra C".
struct Header {
    std::optional<std::size_t> dim;
    std::optional<Token> on, coalgebra;
};

Header header(Builder& bld, const RawBlock& b, bool allow_dim, bool allow_on, bool allow_coalgebra) {
    Header h;
    const auto& t = b.header;
    for (std::size_t i = 0; i < t.size();) {
        const Token& w = t[i];
        if (w.kind == Tok::ident && w.text == "dim" && allow_dim && !h.dim) {
            if (i + 1 < t.size() && t[i + 1].kind == Tok::minus && i + 2 < t.size() && t[i + 2].kind == Tok::number) {
                bld.diag("dimension", join(t[i + 1].span, t[i + 2].span),
                         "dimension must be a non-negative integer, found -" + t[i + 2].text);
                i += 3;
                continue;
            }
            if (i + 1 >= t.size() || t[i + 1].kind != Tok::number) {
                bld.diag("syntax", i + 1 < t.size() ? t[i + 1].span : w.span, "expected a dimension after 'dim'");
                return h;
            }
            if (t[i + 1].text.find('/') != std::string::npos) {
                bld.diag("dimension", t[i + 1].span, "dimension must be a non-negative integer, found " + t[i + 1].text);
            } else {
                h.dim = std::stoull(t[i + 1].text);
            }
            i += 2;
        } else if (w.kind == Tok::ident && w.text == "on" && allow_on && !h.on) {
            if (i + 1 >= t.size() || t[i + 1].kind != Tok::ident) {
                bld.diag("syntax", w.span, "expected a block name after 'on'");
                return h;
            }
            h.on = t[i + 1];
            i += 2;
        } else if (w.kind == Tok::ident && w.text == "coalgebra" && allow_coalgebra && !h.coalgebra) {
            if (i + 1 >= t.size() || t[i + 1].kind != Tok::ident) {
                bld.diag("syntax", w.span, "expected a block name after 'coalgebra'");
                return h;
            }
            h.coalgebra = t[i + 1];
            i += 2;
        } else {
            bld.diag("syntax", w.span, "unexpected '" + w.text + "' in " + b.kind + " header");
            return h;
        }
    }
    return h;
}

// Basis of a coalgebra-like block: the basis key or the order of first appearance on the left of delta.
std::optional<Space> coalgebra_basis(Builder& bld, const RawBlock& b, const KeySet& ks, std::optional<std::size_t> dim) {
    Space s{"coalgebra " + b.name.text, {}};
    const std::size_t before = bld.errors();
    const RawKey* bk = single(ks, "basis");
    Span where = b.name.span;
    if (bk) {
        where = bk->span;
        for (const Token& t : bld.names(*bk)) {
            if (s.find(t.text))
                bld.diag("reference", t.span, "duplicate basis element '" + t.text + "'");
            else
                s.names.push_back(t.text);
        }
    } else {
        for (const char* head : {"delta", "counit"})
            if (const RawKey* k = single(ks, head))
                for (const RawItem& item : k->items)
                    if (!item.toks.empty() && item.toks.front().kind == Tok::ident && !s.find(item.toks.front().text))
                        s.names.push_back(item.toks.front().text);
    }
    if (dim && *dim != s.names.size())
        bld.diag("dimension", where,
                 b.kind + " " + b.name.text + " declares dim " + std::to_string(*dim) + " but has " +
                     std::to_string(s.names.size()) + " basis element(s)");
    if (bld.errors() != before) return std::nullopt;
    return s;
}

std::optional<Coalgebra> build_coalgebra(Builder& bld, const RawBlock& b, const KeySet& ks, const Header& h) {
    auto basis = coalgebra_basis(bld, b, ks, h.dim);
    if (!basis) return std::nullopt;
    const std::size_t n = basis->names.size();
    Matrix delta(bld.field, n * n, n), counit(bld.field, 1, n);
    if (const RawKey* k = single(ks, "delta")) bld.entries(*k, delta, {&*basis}, {&*basis, &*basis});
    if (const RawKey* k = single(ks, "counit")) bld.entries(*k, counit, {&*basis}, {});
    return Coalgebra{bld.field, n, delta, counit, basis->names};
}

std::optional<HopfAlgebra> build_hopf(Builder& bld, const RawBlock& b, const KeySet& ks, const Header& h) {
    auto c = build_coalgebra(bld, b, ks, h);
    if (!c) return std::nullopt;
    const Space s{"hopf " + b.name.text, c->basis};
    const std::size_t n = c->dim;
    HopfAlgebra hopf{*c, Matrix(bld.field, n, n * n), Matrix(bld.field, n, 1), Matrix(bld.field, n, n)};
    if (const RawKey* k = single(ks, "mult")) bld.entries(*k, hopf.mult, {&s, &s}, {&s});
    if (const RawKey* k = single(ks, "antipode")) bld.entries(*k, hopf.antipode, {&s}, {&s});
    if (const RawKey* k = single(ks, "unit")) {
        if (k->items.size() != 1)
            bld.diag("syntax", k->span, "unit takes a single linear combination");
        else if (auto v = bld.vector(k->items[0].toks, 0, k->items[0].toks.size(), k->items[0].span, {&s}))
            hopf.unit = *v;
    }
    return hopf;
}

std::optional<std::size_t> unit_index(const Matrix& v) {
    std::optional<std::size_t> r;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        if (v(i, 0).is_zero()) continue;
        if (!v(i, 0).is_one() || r) return std::nullopt;
        r = i;
    }
    return r;
}

// Composite of basis elements when one of them is a basis identity: the unit law.
Matrix default_compose(const LinCategory& d, std::size_t x, std::size_t y, std::size_t z) {
    Matrix m(d.field, d.hom(x, z), d.hom(y, z) * d.hom(x, y));
    const std::size_t hxy = d.hom(x, y);
    if (x == y)
        if (auto u = unit_index(d.identity(x)))
            for (std::size_t g = 0; g < d.hom(y, z); ++g) m(g, g * hxy + *u) = Scalar::one(d.field);
    if (y == z)
        if (auto u = unit_index(d.identity(y)))
            for (std::size_t f = 0; f < hxy; ++f) m(f, *u * hxy + f) = Scalar::one(d.field);
    return m;
}

struct HomName {
    std::size_t x, y, i;
};

struct CategoryIndex {
    std::map<std::string, HomName> homs;
    std::vector<Space> spaces;  // x*n+y
};

CategoryIndex index_category(const LinCategory& d) {
    CategoryIndex ix;
    const std::size_t n = d.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto& names = d.hom_basis(x, y);
            ix.spaces.push_back(Space{"Hom(" + d.objects[x] + "," + d.objects[y] + ")", names});
            for (std::size_t i = 0; i < names.size(); ++i) ix.homs[names[i]] = {x, y, i};
        }
    return ix;
}

std::optional<std::size_t> object(Builder& bld, const LinCategory& d, const Token& t) {
    auto it = std::find(d.objects.begin(), d.objects.end(), t.text);
    if (it == d.objects.end()) {
        bld.diag("reference", t.span, "unknown object '" + t.text + "'");
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - d.objects.begin());
}

// "hom X Y" and friends: exactly the expected number of object names after the head.
std::optional<std::vector<std::size_t>> key_objects(Builder& bld, const LinCategory& d, const RawKey& k,
                                                    std::size_t count) {
    if (k.words.size() != count + 1) {
        bld.diag("syntax", k.span,
                 "'" + key_name(k) + "' takes " + std::to_string(count) + " object name(s)");
        return std::nullopt;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= count; ++i) {
        auto o = object(bld, d, k.words[i]);
        if (!o) return std::nullopt;
        out.push_back(*o);
    }
    return out;
}

std::optional<LinCategory> build_category(Builder& bld, const RawBlock& b, const KeySet& ks) {
    const std::size_t before = bld.errors();
    std::vector<std::string> objs;
    if (const RawKey* k = single(ks, "objects")) {
        for (const Token& t : bld.names(*k, true)) {
            if (std::find(objs.begin(), objs.end(), t.text) != objs.end())
                bld.diag("reference", t.span, "duplicate object '" + t.text + "'");
            else
                objs.push_back(t.text);
        }
    } else {
        bld.diag("reference", b.name.span, "category " + b.name.text + " has no objects key");
        return std::nullopt;
    }
    LinCategory d(bld.field, objs);
    const std::size_t n = d.size();
    std::map<std::string, Span> seen;
    std::vector<bool> hom_given(n * n, false);
    for (const RawKey* k : all(ks, "hom")) {
        auto xy = key_objects(bld, d, *k, 2);
        if (!xy) continue;
        const std::size_t x = (*xy)[0], y = (*xy)[1];
        if (hom_given[x * n + y]) {
            bld.diag("syntax", k->span, "duplicate hom " + objs[x] + " " + objs[y]);
            continue;
        }
        hom_given[x * n + y] = true;
        std::vector<std::string> basis;
        for (const Token& t : bld.names(*k)) {
            if (seen.count(t.text)) {
                bld.diag("reference", t.span, "duplicate morphism name '" + t.text + "'");
                continue;
            }
            seen[t.text] = t.span;
            basis.push_back(t.text);
        }
        d.set_hom(x, y, basis);
    }
    if (bld.errors() != before) return std::nullopt;
    const CategoryIndex ix = index_category(d);

    std::vector<bool> id_given(n, false);
    for (const RawKey* k : all(ks, "identity")) {
        auto xs = key_objects(bld, d, *k, 1);
        if (!xs) continue;
        const std::size_t x = (*xs)[0];
        if (id_given[x]) {
            bld.diag("syntax", k->span, "duplicate identity for " + objs[x]);
            continue;
        }
        id_given[x] = true;
        if (k->items.size() != 1) {
            bld.diag("syntax", k->span, "identity takes a single linear combination");
            continue;
        }
        if (auto v = bld.vector(k->items[0].toks, 0, k->items[0].toks.size(), k->items[0].span, {&ix.spaces[x * n + x]}))
            d.set_identity(x, *v);
    }
    for (std::size_t x = 0; x < n; ++x)
        if (!id_given[x]) bld.diag("reference", b.name.span, "category " + b.name.text + " has no identity for " + objs[x]);
    if (bld.errors() != before) return std::nullopt;

    std::vector<Matrix> comp;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) comp.push_back(default_compose(d, x, y, z));
    std::map<std::pair<std::string, std::string>, bool> dup;
    if (const RawKey* k = single(ks, "compose")) {
        for (const RawItem& item : k->items) {
            auto a = bld.arrow(item);
            if (!a) continue;
            auto lhs = bld.product(item.toks, *a);
            if (!lhs) continue;
            if (lhs->size() != 2) {
                bld.diag("dimension", item.span, "composition entries take the form 'g*f -> h'");
                continue;
            }
            const Token& gt = (*lhs)[0];
            const Token& ft = (*lhs)[1];
            auto git = ix.homs.find(gt.text), fit = ix.homs.find(ft.text);
            if (git == ix.homs.end() || fit == ix.homs.end()) {
                const Token& bad = git == ix.homs.end() ? gt : ft;
                bld.diag("reference", bad.span, "unknown morphism '" + bad.text + "'");
                continue;
            }
            const HomName g = git->second, f = fit->second;
            if (g.x != f.y) {
                bld.diag("dimension", item.span, "'" + gt.text + "' and '" + ft.text + "' are not composable");
                continue;
            }
            if (dup[{gt.text, ft.text}]) {
                bld.diag("syntax", item.span, "duplicate entry for '" + gt.text + "*" + ft.text + "'");
                continue;
            }
            dup[{gt.text, ft.text}] = true;
            const std::size_t x = f.x, y = f.y, z = g.y;
            auto v = bld.vector(item.toks, *a + 1, item.toks.size(), item.span, {&ix.spaces[x * n + z]});
            if (!v) continue;
            comp[(x * n + y) * n + z].set_block(0, g.i * d.hom(x, y) + f.i, *v);
        }
    }
    if (bld.errors() != before) return std::nullopt;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) d.set_compose(x, y, z, comp[(x * n + y) * n + z]);
    return d;
}

// Resolved per-pair blocks over a category and coalgebra.
struct PairBase {
    const LinCategory* cat = nullptr;
    const Coalgebra* coalg = nullptr;
    std::string cat_name, coalg_name;
};

template <class F>
std::vector<bool> per_pair(Builder& bld, const KeySet& ks, const LinCategory& d, F&& fill) {
    const std::size_t n = d.size();
    std::vector<bool> given(n * n, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (d.hom(x, y) == 0) given[x * n + y] = true;
    std::vector<bool> explicit_(n * n, false);
    for (const RawKey* k : all(ks, "hom")) {
        auto xy = key_objects(bld, d, *k, 2);
        if (!xy) continue;
        const std::size_t x = (*xy)[0], y = (*xy)[1];
        if (explicit_[x * n + y]) {
            bld.diag("syntax", k->span, "duplicate hom " + d.objects[x] + " " + d.objects[y]);
            continue;
        }
        explicit_[x * n + y] = given[x * n + y] = true;
        fill(*k, x, y);
    }
    return given;
}

}  // namespace

ParseResult parse(std::string_view text) {
    ParseResult res;
    auto& diags = res.diagnostics;
    std::vector<Token> toks = Lexer(text, diags).run();
    RawFile raw = Parser(std::move(toks), diags).run();

    Builder bld(diags);
    Document doc;
    if (raw.fields.empty()) {
        diags.push_back({"reference", "missing field declaration", Span{1, 1, 0, std::min<std::size_t>(text.size(), 1)}});
    }
    for (std::size_t i = 0; i < raw.fields.size(); ++i) {
        const auto& [body, span] = raw.fields[i];
        if (i > 0) {
            bld.diag("syntax", span, "duplicate field declaration");
            continue;
        }
        if (body.size() == 1 && body[0].kind == Tok::ident && body[0].text == "Q") {
            doc.field = Field::rationals();
        } else if (body.size() == 4 && body[0].text == "GF" && body[1].kind == Tok::lparen &&
                   body[2].kind == Tok::number && body[3].kind == Tok::rparen &&
                   body[2].text.find('/') == std::string::npos) {
            const std::string& digits = body[2].text;
            const std::uint64_t p = digits.size() > 18 ? 0 : std::stoull(digits);
            if (p < 2 || !is_prime(p) || p > (1ull << 31))
                bld.diag("syntax", body[2].span, "GF modulus must be a prime below 2^31, found " + digits);
            else
                doc.field = Field::prime(p);
        } else {
            bld.diag("syntax", span, "expected 'field Q;' or 'field GF(p);'");
        }
    }
    bld.field = doc.field;

    // Block names share one namespace.
    std::map<std::string, const RawBlock*> names;
    for (const RawBlock& b : raw.blocks) {
        if (names.count(b.name.text)) {
            bld.diag("reference", b.name.span, "duplicate block name '" + b.name.text + "'");
            continue;
        }
        names[b.name.text] = &b;
    }
    auto blocks_of = [&](const std::string& kind) {
        std::vector<const RawBlock*> out;
        for (const auto& b : raw.blocks)
            if (b.kind == kind && names[b.name.text] == &b) out.push_back(&b);
        return out;
    };
    auto ref = [&](const std::optional<Token>& t, const Span& owner, const std::string& what,
                   const std::vector<std::string>& kinds) -> const RawBlock* {
        if (!t) {
            bld.diag("reference", owner, "missing '" + what + "' reference");
            return nullptr;
        }
        auto it = names.find(t->text);
        if (it == names.end() || std::find(kinds.begin(), kinds.end(), it->second->kind) == kinds.end()) {
            bld.diag("reference", t->span, "no " + kinds.front() + " block named '" + t->text + "'");
            return nullptr;
        }
        return it->second;
    };

    std::map<std::string, Coalgebra> coalgebras;  // includes the coalgebras of Hopf blocks
    std::map<std::string, LinCategory> categories;
    std::map<std::string, std::size_t> entwining_index, coaction_index;

    for (const RawBlock* b : blocks_of("coalgebra")) {
        const KeySet ks = collect_keys(bld, *b, {"basis", "delta", "counit"}, {});
        const Header h = header(bld, *b, true, false, false);
        if (auto c = build_coalgebra(bld, *b, ks, h)) {
            coalgebras[b->name.text] = *c;
            doc.coalgebras.push_back({b->name.text, b->span, *c});
        }
    }
    for (const RawBlock* b : blocks_of("hopf")) {
        const KeySet ks = collect_keys(bld, *b, {"basis", "delta", "counit", "mult", "unit", "antipode"}, {});
        const Header h = header(bld, *b, true, false, false);
        if (auto hp = build_hopf(bld, *b, ks, h)) {
            coalgebras[b->name.text] = hp->coalg;
            doc.hopfs.push_back({b->name.text, b->span, *hp});
        }
    }
    for (const RawBlock* b : blocks_of("category")) {
        const KeySet ks = collect_keys(bld, *b, {"objects", "compose"}, {"hom", "identity"});
        header(bld, *b, false, false, false);
        if (auto d = build_category(bld, *b, ks)) {
            categories[b->name.text] = *d;
            doc.categories.push_back({b->name.text, b->span, *d});
        }
    }

    auto resolve_base = [&](const RawBlock& b, const Header& h) -> std::optional<PairBase> {
        const RawBlock* cb = ref(h.on, b.name.span, "on", {"category"});
        const RawBlock* kb = ref(h.coalgebra, b.name.span, "coalgebra", {"coalgebra", "hopf"});
        if (!cb || !kb || !categories.count(cb->name.text) || !coalgebras.count(kb->name.text)) return std::nullopt;
        return PairBase{&categories.at(cb->name.text), &coalgebras.at(kb->name.text), cb->name.text, kb->name.text};
    };

    for (const RawBlock* b : blocks_of("coactions")) {
        const KeySet ks = collect_keys(bld, *b, {}, {"hom"});
        const Header h = header(bld, *b, false, true, true);
        auto base = resolve_base(*b, h);
        if (!base) continue;
        const LinCategory& d = *base->cat;
        const Coalgebra& c = *base->coalg;
        const CategoryIndex ix = index_category(d);
        const Space cs{"coalgebra " + base->coalg_name, c.basis};
        const std::size_t n = d.size();
        GaloisData g{d, c, {}};
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) g.rho.emplace_back(bld.field, d.hom(x, y) * c.dim, d.hom(x, y));
        const std::size_t before = bld.errors();
        auto given = per_pair(bld, ks, d, [&](const RawKey& k, std::size_t x, std::size_t y) {
            const Space& hs = ix.spaces[x * n + y];
            bld.entries(k, g.rho[x * n + y], {&hs}, {&hs, &cs});
        });
        if (bld.errors() != before) continue;
        coaction_index[b->name.text] = doc.coactions.size();
        doc.coactions.push_back({b->name.text, base->cat_name, base->coalg_name, b->span, g, given});
    }

    for (const RawBlock* b : blocks_of("entwining")) {
        const KeySet ks = collect_keys(bld, *b, {}, {"hom"});
        const Header h = header(bld, *b, false, true, true);
        auto base = resolve_base(*b, h);
        if (!base) continue;
        const LinCategory& d = *base->cat;
        const Coalgebra& c = *base->coalg;
        const CategoryIndex ix = index_category(d);
        const Space cs{"coalgebra " + base->coalg_name, c.basis};
        const std::size_t n = d.size();
        Entwining e{d, c, {}};
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                e.psi.emplace_back(bld.field, d.hom(x, y) * c.dim, c.dim * d.hom(x, y));
        const std::size_t before = bld.errors();
        auto given = per_pair(bld, ks, d, [&](const RawKey& k, std::size_t x, std::size_t y) {
            const Space& hs = ix.spaces[x * n + y];
            bld.entries(k, e.at(x, y), {&cs, &hs}, {&hs, &cs});
        });
        if (bld.errors() != before) continue;
        entwining_index[b->name.text] = doc.entwinings.size();
        doc.entwinings.push_back({b->name.text, base->cat_name, base->coalg_name, b->span, e, given});
    }

    for (const RawBlock* b : blocks_of("module")) {
        const KeySet ks = collect_keys(bld, *b, {"act", "coaction"}, {"space"});
        const Header h = header(bld, *b, false, true, false);
        const RawBlock* base = ref(h.on, b->name.span, "on", {"category", "entwining"});
        if (!base) continue;
        const bool entwined = base->kind == "entwining";
        const LinCategory* dp = nullptr;
        const Coalgebra* cp = nullptr;
        if (entwined) {
            if (!entwining_index.count(base->name.text)) continue;
            const Entwining& e = doc.entwinings[entwining_index.at(base->name.text)].entwining;
            dp = &e.cat;
            cp = &e.coalg;
        } else {
            if (!categories.count(base->name.text)) continue;
            dp = &categories.at(base->name.text);
        }
        const LinCategory& d = *dp;
        const std::size_t n = d.size();
        const std::size_t before = bld.errors();
        std::vector<Space> spaces(n);
        std::map<std::string, std::pair<std::size_t, std::size_t>> mnames;
        std::vector<bool> space_given(n, false);
        for (std::size_t x = 0; x < n; ++x) spaces[x].label = "module " + b->name.text + " at " + d.objects[x];
        for (const RawKey* k : all(ks, "space")) {
            auto xs = key_objects(bld, d, *k, 1);
            if (!xs) continue;
            const std::size_t x = (*xs)[0];
            if (space_given[x]) {
                bld.diag("syntax", k->span, "duplicate space " + d.objects[x]);
                continue;
            }
            space_given[x] = true;
            for (const Token& t : bld.names(*k)) {
                if (mnames.count(t.text)) {
                    bld.diag("reference", t.span, "duplicate module basis element '" + t.text + "'");
                    continue;
                }
                mnames[t.text] = {x, spaces[x].names.size()};
                spaces[x].names.push_back(t.text);
            }
        }
        if (bld.errors() != before) continue;
        const CategoryIndex ix = index_category(d);
        EntwinedModule m;
        for (std::size_t x = 0; x < n; ++x) m.module.dims.push_back(spaces[x].names.size());
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                Matrix a(bld.field, m.module.dims[x], m.module.dims[y] * d.hom(x, y));
                if (x == y)
                    if (auto u = unit_index(d.identity(x)))
                        for (std::size_t i = 0; i < m.module.dims[x]; ++i) a(i, i * d.hom(x, x) + *u) = Scalar::one(bld.field);
                m.module.act.push_back(a);
            }
        std::set<std::pair<std::string, std::string>> seen;
        if (const RawKey* k = single(ks, "act")) {
            for (const RawItem& item : k->items) {
                auto a = bld.arrow(item);
                if (!a) continue;
                auto lhs = bld.product(item.toks, *a);
                if (!lhs) continue;
                if (lhs->size() != 2) {
                    bld.diag("dimension", item.span, "action entries take the form 'm*f -> lincomb'");
                    continue;
                }
                const Token& mt = (*lhs)[0];
                const Token& ft = (*lhs)[1];
                auto mit = mnames.find(mt.text);
                auto fit = ix.homs.find(ft.text);
                if (mit == mnames.end()) {
                    bld.diag("reference", mt.span, "unknown module basis element '" + mt.text + "'");
                    continue;
                }
                if (fit == ix.homs.end()) {
                    bld.diag("reference", ft.span, "unknown morphism '" + ft.text + "'");
                    continue;
                }
                const auto [y, mi] = mit->second;
                const HomName f = fit->second;
                if (f.y != y) {
                    bld.diag("dimension", item.span,
                             "'" + mt.text + "' lies over " + d.objects[y] + " but '" + ft.text + "' ends at " +
                                 d.objects[f.y]);
                    continue;
                }
                if (!seen.insert({mt.text, ft.text}).second) {
                    bld.diag("syntax", item.span, "duplicate entry for '" + mt.text + "*" + ft.text + "'");
                    continue;
                }
                auto v = bld.vector(item.toks, *a + 1, item.toks.size(), item.span, {&spaces[f.x]});
                if (!v) continue;
                m.module.action(f.x, y).set_block(0, mi * d.hom(f.x, y) + f.i, *v);
            }
        }
        if (entwined) {
            const Space cs{"coalgebra", cp->basis};
            for (std::size_t x = 0; x < n; ++x) m.rho.emplace_back(bld.field, m.module.dims[x] * cp->dim, m.module.dims[x]);
            if (const RawKey* k = single(ks, "coaction")) {
                std::set<std::string> done;
                for (const RawItem& item : k->items) {
                    auto a = bld.arrow(item);
                    if (!a) continue;
                    auto lhs = bld.product(item.toks, *a);
                    if (!lhs) continue;
                    auto mit = lhs->size() == 1 ? mnames.find(lhs->front().text) : mnames.end();
                    if (mit == mnames.end()) {
                        bld.diag("reference", item.toks.front().span, "expected a module basis element before '->'");
                        continue;
                    }
                    if (!done.insert(lhs->front().text).second) {
                        bld.diag("syntax", item.span, "duplicate entry for '" + lhs->front().text + "'");
                        continue;
                    }
                    const auto [x, mi] = mit->second;
                    auto v = bld.vector(item.toks, *a + 1, item.toks.size(), item.span, {&spaces[x], &cs});
                    if (v) m.rho[x].set_block(0, mi, *v);
                }
            }
        } else if (const RawKey* k = single(ks, "coaction")) {
            bld.diag("reference", k->span, "coaction requires a module declared on an entwining");
        }
        if (bld.errors() != before) continue;
        std::vector<std::vector<std::string>> basis;
        for (const Space& s : spaces) basis.push_back(s.names);
        doc.modules.push_back({b->name.text, base->name.text, entwined, b->span, m, basis});
    }

    for (const RawBlock* b : blocks_of("phi")) {
        const KeySet ks = collect_keys(bld, *b, {}, {"hom"});
        const Header h = header(bld, *b, false, true, false);
        const RawBlock* base = ref(h.on, b->name.span, "on", {"coactions"});
        if (!base || !coaction_index.count(base->name.text)) continue;
        const CoactionDecl& co = doc.coactions[coaction_index.at(base->name.text)];
        const LinCategory& d = co.data.cat;
        const std::size_t n = d.size();
        const CategoryIndex ix = index_category(d);
        const Space cs{"coalgebra " + co.coalgebra, co.data.coalg.basis};
        PhiFamily phi;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) phi.phi.emplace_back(bld.field, d.hom(x, y), co.data.k());
        const std::size_t before = bld.errors();
        auto given = per_pair(bld, ks, d, [&](const RawKey& k, std::size_t x, std::size_t y) {
            bld.entries(k, phi.phi[x * n + y], {&cs}, {&ix.spaces[x * n + y]});
        });
        if (bld.errors() != before) continue;
        doc.phis.push_back({b->name.text, base->name.text, b->span, phi, given});
    }

    if (diags.empty()) res.document = std::move(doc);
    return res;
}

// ---------------------------------------------------------------- serialization

namespace {

// "a*b", "2 a*b", "-1/2 a", " + ", " - ".
std::string lincomb_str(const Matrix& col, std::size_t ci, const std::vector<const std::vector<std::string>*>& spaces) {
    std::string out;
    const Field f = col.field();
    for (std::size_t r = 0; r < col.rows(); ++r) {
        Scalar c = col(r, ci);
        if (c.is_zero()) continue;
        std::vector<std::size_t> idx(spaces.size());
        std::size_t rem = r;
        for (std::size_t i = spaces.size(); i-- > 0;) {
            idx[i] = rem % spaces[i]->size();
            rem /= spaces[i]->size();
        }
        bool negative = f.is_rational() && sgn(c.to_mpq()) < 0;
        if (negative) c = -c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string factors;
        for (std::size_t i = 0; i < spaces.size(); ++i) factors += (i ? "*" : "") + (*spaces[i])[idx[i]];
        if (spaces.empty())
            out += c.str();
        else if (c.is_one())
            out += factors;
        else
            out += c.str() + " " + factors;
    }
    return out.empty() ? "0" : out;
}

std::vector<std::string> product_names(const std::vector<const std::vector<std::string>*>& spaces) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        std::vector<std::string> next;
        for (const auto& p : out)
            for (const auto& n : *spaces[i]) next.push_back(p.empty() && i == 0 ? n : p + "*" + n);
        out = std::move(next);
    }
    return out;
}

// Writes "lhs -> rhs;" for every column that differs from the default.
void write_entries(std::ostringstream& os, const std::string& key, const Matrix& m, const Matrix* dflt,
                   const std::vector<const std::vector<std::string>*>& src,
                   const std::vector<const std::vector<std::string>*>& dst, bool keep_empty = false) {
    const auto lhs = product_names(src);
    std::vector<std::string> lines;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const bool is_default = dflt ? m.col(j) == dflt->col(j) : m.col(j).is_zero();
        if (is_default) continue;
        lines.push_back(lhs[j] + " -> " + lincomb_str(m, j, dst) + ";");
    }
    if (lines.empty() && !keep_empty) return;
    os << "  " << key << ":";
    if (lines.empty()) os << " ;";
    for (const auto& l : lines) os << "\n    " << l;
    os << "\n";
}

std::string join_names(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += " " + s;
    return out;
}

void write_coalgebra(std::ostringstream& os, const Coalgebra& c) {
    os << "  basis:" << join_names(c.basis) << ";\n";
    write_entries(os, "delta", c.delta, nullptr, {&c.basis}, {&c.basis, &c.basis});
    write_entries(os, "counit", c.counit, nullptr, {&c.basis}, {});
}

template <class T>
std::vector<const T*> sorted(const std::vector<T>& v) {
    std::vector<const T*> out;
    for (const auto& x : v) out.push_back(&x);
    std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->name < b->name; });
    return out;
}

std::string hom_key(const LinCategory& d, std::size_t x, std::size_t y) {
    return "hom " + d.objects[x] + " " + d.objects[y];
}

}  // namespace

std::string serialize(const Document& doc) {
    std::ostringstream os;
    os << "field " << (doc.field.is_rational() ? "Q" : "GF(" + std::to_string(doc.field.modulus()) + ")") << ";\n";
    for (const auto* c : sorted(doc.coalgebras)) {
        os << "\ncoalgebra " << c->name << " dim " << c->coalg.dim << " {\n";
        write_coalgebra(os, c->coalg);
        os << "}\n";
    }
    for (const auto* h : sorted(doc.hopfs)) {
        const auto& b = h->hopf.coalg.basis;
        os << "\nhopf " << h->name << " dim " << h->hopf.coalg.dim << " {\n";
        write_coalgebra(os, h->hopf.coalg);
        write_entries(os, "mult", h->hopf.mult, nullptr, {&b, &b}, {&b});
        os << "  unit: " << lincomb_str(h->hopf.unit, 0, {&b}) << ";\n";
        write_entries(os, "antipode", h->hopf.antipode, nullptr, {&b}, {&b});
        os << "}\n";
    }
    for (const auto* c : sorted(doc.categories)) {
        const LinCategory& d = c->cat;
        const std::size_t n = d.size();
        os << "\ncategory " << c->name << " {\n";
        os << "  objects:" << join_names(d.objects) << ";\n";
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (d.hom(x, y) > 0) os << "  " << hom_key(d, x, y) << ":" << join_names(d.hom_basis(x, y)) << ";\n";
        for (std::size_t x = 0; x < n; ++x)
            os << "  identity " << d.objects[x] << ": " << lincomb_str(d.identity(x), 0, {&d.hom_basis(x, x)}) << ";\n";
        std::vector<std::string> lines;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    const Matrix& m = d.compose(x, y, z);
                    const Matrix dflt = default_compose(d, x, y, z);
                    const auto lhs = product_names({&d.hom_basis(y, z), &d.hom_basis(x, y)});
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        if (m.col(j) != dflt.col(j))
                            lines.push_back(lhs[j] + " -> " + lincomb_str(m, j, {&d.hom_basis(x, z)}) + ";");
                }
        if (!lines.empty()) {
            os << "  compose:";
            for (const auto& l : lines) os << "\n    " << l;
            os << "\n";
        }
        os << "}\n";
    }
    for (const auto* c : sorted(doc.coactions)) {
        const LinCategory& d = c->data.cat;
        const std::size_t n = d.size();
        os << "\ncoactions " << c->name << " on " << c->category << " coalgebra " << c->coalgebra << " {\n";
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (d.hom(x, y) > 0 && c->given[x * n + y])
                    write_entries(os, hom_key(d, x, y), c->data.at(x, y), nullptr, {&d.hom_basis(x, y)},
                                  {&d.hom_basis(x, y), &c->data.coalg.basis}, true);
        os << "}\n";
    }
    for (const auto* e : sorted(doc.entwinings)) {
        const LinCategory& d = e->entwining.cat;
        const auto& cb = e->entwining.coalg.basis;
        const std::size_t n = d.size();
        os << "\nentwining " << e->name << " on " << e->category << " coalgebra " << e->coalgebra << " {\n";
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (d.hom(x, y) > 0 && e->given[x * n + y])
                    write_entries(os, hom_key(d, x, y), e->entwining.at(x, y), nullptr, {&cb, &d.hom_basis(x, y)},
                                  {&d.hom_basis(x, y), &cb}, true);
        os << "}\n";
    }
    for (const auto* m : sorted(doc.modules)) {
        const Document* dp = &doc;
        const LinCategory* d = nullptr;
        const Coalgebra* c = nullptr;
        for (const auto& e : dp->entwinings)
            if (m->entwined && e.name == m->base) {
                d = &e.entwining.cat;
                c = &e.entwining.coalg;
            }
        for (const auto& cat : dp->categories)
            if (!m->entwined && cat.name == m->base) d = &cat.cat;
        os << "\nmodule " << m->name << " on " << m->base << " {\n";
        if (!d) {
            os << "}\n";
            continue;
        }
        const std::size_t n = d->size();
        for (std::size_t x = 0; x < n; ++x)
            if (!m->basis[x].empty()) os << "  space " << d->objects[x] << ":" << join_names(m->basis[x]) << ";\n";
        std::vector<std::string> lines;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const Matrix& a = m->module.module.action(x, y);
                Matrix dflt(a.field(), a.rows(), a.cols());
                if (x == y)
                    if (auto u = unit_index(d->identity(x)))
                        for (std::size_t i = 0; i < a.rows(); ++i) dflt(i, i * d->hom(x, x) + *u) = Scalar::one(a.field());
                const auto lhs = product_names({&m->basis[y], &d->hom_basis(x, y)});
                for (std::size_t j = 0; j < a.cols(); ++j)
                    if (a.col(j) != dflt.col(j)) lines.push_back(lhs[j] + " -> " + lincomb_str(a, j, {&m->basis[x]}) + ";");
            }
        if (!lines.empty()) {
            os << "  act:";
            for (const auto& l : lines) os << "\n    " << l;
            os << "\n";
        }
        if (m->entwined && c) {
            lines.clear();
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t j = 0; j < m->basis[x].size(); ++j)
                    if (!m->module.rho[x].col(j).is_zero())
                        lines.push_back(m->basis[x][j] + " -> " + lincomb_str(m->module.rho[x], j, {&m->basis[x], &c->basis}) +
                                        ";");
            if (!lines.empty()) {
                os << "  coaction:";
                for (const auto& l : lines) os << "\n    " << l;
                os << "\n";
            }
        }
        os << "}\n";
    }
    for (const auto* p : sorted(doc.phis)) {
        const CoactionDecl* co = nullptr;
        for (const auto& c : doc.coactions)
            if (c.name == p->coactions) co = &c;
        os << "\nphi " << p->name << " on " << p->coactions << " {\n";
        if (co) {
            const LinCategory& d = co->data.cat;
            const std::size_t n = d.size();
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (d.hom(x, y) > 0 && p->given[x * n + y])
                        write_entries(os, hom_key(d, x, y), p->phi.phi[x * n + y], nullptr, {&co->data.coalg.basis},
                                      {&d.hom_basis(x, y)}, true);
        }
        os << "}\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- structural equality

namespace {

bool same(const Coalgebra& a, const Coalgebra& b) {
    return a.field == b.field && a.dim == b.dim && a.basis == b.basis && a.delta == b.delta && a.counit == b.counit;
}

bool same(const LinCategory& a, const LinCategory& b) {
    if (a.field != b.field || a.objects != b.objects) return false;
    const std::size_t n = a.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (a.identity(x) != b.identity(x)) return false;
        for (std::size_t y = 0; y < n; ++y) {
            if (a.hom_basis(x, y) != b.hom_basis(x, y)) return false;
            for (std::size_t z = 0; z < n; ++z)
                if (a.compose(x, y, z) != b.compose(x, y, z)) return false;
        }
    }
    return true;
}

template <class T, class Eq>
bool same_list(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
    if (a.size() != b.size()) return false;
    auto sa = sorted(a), sb = sorted(b);
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (sa[i]->name != sb[i]->name || !eq(*sa[i], *sb[i])) return false;
    return true;
}

}  // namespace

bool structurally_equal(const Document& a, const Document& b) {
    if (a.field != b.field) return false;
    return same_list(a.coalgebras, b.coalgebras, [](const auto& x, const auto& y) { return same(x.coalg, y.coalg); }) &&
           same_list(a.hopfs, b.hopfs,
                     [](const auto& x, const auto& y) {
                         return same(x.hopf.coalg, y.hopf.coalg) && x.hopf.mult == y.hopf.mult &&
                                x.hopf.unit == y.hopf.unit && x.hopf.antipode == y.hopf.antipode;
                     }) &&
           same_list(a.categories, b.categories, [](const auto& x, const auto& y) { return same(x.cat, y.cat); }) &&
           same_list(a.coactions, b.coactions,
                     [](const auto& x, const auto& y) {
                         return x.category == y.category && x.coalgebra == y.coalgebra && x.given == y.given &&
                                same(x.data.cat, y.data.cat) && same(x.data.coalg, y.data.coalg) && x.data.rho == y.data.rho;
                     }) &&
           same_list(a.entwinings, b.entwinings,
                     [](const auto& x, const auto& y) {
                         return x.category == y.category && x.coalgebra == y.coalgebra && x.given == y.given &&
                                same(x.entwining.cat, y.entwining.cat) && same(x.entwining.coalg, y.entwining.coalg) &&
                                x.entwining.psi == y.entwining.psi;
                     }) &&
           same_list(a.modules, b.modules,
                     [](const auto& x, const auto& y) {
                         return x.base == y.base && x.entwined == y.entwined && x.basis == y.basis &&
                                x.module.module.dims == y.module.module.dims &&
                                x.module.module.act == y.module.module.act && x.module.rho == y.module.rho;
                     }) &&
           same_list(a.phis, b.phis, [](const auto& x, const auto& y) {
               return x.coactions == y.coactions && x.given == y.given && x.phi.phi == y.phi.phi;
           });
}

// ---------------------------------------------------------------- validation

namespace {

void missing_pairs(Verdict& v, const LinCategory& d, const std::vector<bool>& given) {
    const std::size_t n = d.size();
    std::string missing;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (!given[x * n + y]) missing += (missing.empty() ? "" : ", ") + ("hom " + d.objects[x] + " " + d.objects[y]);
    v.add("missing entry", missing.empty(), missing);
}

Verdict guarded(const std::function<Verdict()>& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        Verdict v;
        v.add("shape", false, e.what());
        return v;
    }
}

}  // namespace

std::vector<BlockVerdict> validate(const Document& doc) {
    std::vector<BlockVerdict> out;
    for (const auto& c : doc.coalgebras)
        out.push_back({"coalgebra", c.name, c.span, guarded([&] { return verify_coalgebra(c.coalg); })});
    for (const auto& h : doc.hopfs) out.push_back({"hopf", h.name, h.span, guarded([&] { return verify_hopf(h.hopf); })});
    for (const auto& c : doc.categories)
        out.push_back({"category", c.name, c.span, guarded([&] { return verify_category(c.cat); })});
    for (const auto& c : doc.coactions) {
        Verdict v;
        missing_pairs(v, c.data.cat, c.given);
        if (v.ok()) v.merge(guarded([&] { return verify_galois_data(c.data); }));
        out.push_back({"coactions", c.name, c.span, v});
    }
    for (const auto& e : doc.entwinings) {
        Verdict v;
        missing_pairs(v, e.entwining.cat, e.given);
        if (v.ok()) v.merge(guarded([&] { return verify_entwining(e.entwining); }));
        out.push_back({"entwining", e.name, e.span, v});
    }
    for (const auto& m : doc.modules) {
        Verdict v;
        if (m.entwined) {
            for (const auto& e : doc.entwinings)
                if (e.name == m.base) v.merge(guarded([&] { return verify_entwined_module(e.entwining, m.module); }));
        } else {
            for (const auto& c : doc.categories)
                if (c.name == m.base) v.merge(guarded([&] { return verify_right_module(c.cat, m.module.module); }));
        }
        out.push_back({"module", m.name, m.span, v});
    }
    for (const auto& p : doc.phis) {
        Verdict v;
        for (const auto& c : doc.coactions)
            if (c.name == p.coactions) {
                missing_pairs(v, c.data.cat, p.given);
                if (v.ok()) {
                    try {
                        v.add("colinearity", is_colinear_family(c.data, p.phi));
                    } catch (const std::exception& e) {
                        v.add("shape", false, e.what());
                    }
                }
            }
        out.push_back({"phi", p.name, p.span, v});
    }
    return out;
}

}  // namespace ent::dsl
