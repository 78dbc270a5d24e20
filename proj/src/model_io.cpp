#include <actfd/model_io.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace actfd
{
    ParseError::ParseError(SourceLoc w, const std::string & what) :
        std::runtime_error(std::to_string(w.line) + ":" + std::to_string(w.column) + ": " + what),
        where(w)
    {
    }

    namespace
    {
        enum class Tok
        {
            Int,
            Ident,
            Punct,
            End
        };

        struct Token
        {
            Tok kind = Tok::End;
            std::string text;
            Value value = 0;
            int column = 0;
        };

        auto lex_line(std::string_view line, int lineno) -> std::vector<Token>
        {
            std::vector<Token> out;
            std::size_t i = 0;
            while (i < line.size()) {
                char ch = line[i];
                int col = static_cast<int>(i) + 1;
                if (ch == '#')
                    break;
                if (std::isspace(static_cast<unsigned char>(ch))) {
                    ++i;
                    continue;
                }
                bool neg_number = ch == '-' && i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1]));
                if (std::isdigit(static_cast<unsigned char>(ch)) || neg_number) {
                    std::size_t j = i + 1;
                    while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                        ++j;
                    Token t{Tok::Int, std::string(line.substr(i, j - i)), 0, col};
                    auto [p, ec] = std::from_chars(line.data() + i, line.data() + j, t.value);
                    if (ec != std::errc{} || p != line.data() + j)
                        throw ParseError({lineno, col}, "integer out of range: " + t.text);
                    out.push_back(std::move(t));
                    i = j;
                }
                else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                    std::size_t j = i + 1;
                    while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                        ++j;
                    out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), 0, col});
                    i = j;
                }
                else if (line.substr(i, 2) == "..") {
                    out.push_back({Tok::Punct, "..", 0, col});
                    i += 2;
                }
                else if (std::string_view("{},*=+-").find(ch) != std::string_view::npos) {
                    out.push_back({Tok::Punct, std::string(1, ch), 0, col});
                    ++i;
                }
                else
                    throw ParseError({lineno, col}, std::string("unexpected character '") + ch + "'");
            }
            out.push_back({Tok::End, "", 0, static_cast<int>(line.size()) + 1});
            return out;
        }

        class LineParser
        {
        public:
            LineParser(std::vector<Token> toks, int lineno, ModelFile & mf,
                std::map<std::string, VarId, std::less<>> & names) :
                toks_(std::move(toks)),
                lineno_(lineno),
                mf_(mf),
                names_(names)
            {
            }

            auto parse(bool & saw_label) -> void
            {
                if (peek().kind == Tok::End)
                    return;
                auto kw = expect(Tok::Ident, "a statement keyword");
                SourceLoc at{lineno_, kw.column};
                if (kw.text == "var")
                    parse_var(at);
                else if (kw.text == "lin")
                    add(parse_lin(), at);
                else if (kw.text == "eq")
                    add(parse_eq(), at);
                else if (kw.text == "neq")
                    add(parse_neq(), at);
                else if (kw.text == "alldistinct")
                    add(AllDistinct{parse_names(1)}, at);
                else if (kw.text == "label") {
                    if (saw_label)
                        fail(kw, "duplicate label statement");
                    saw_label = true;
                    parse_label();
                }
                else
                    fail(kw, "unknown statement '" + kw.text + "'");
                if (peek().kind != Tok::End)
                    fail(peek(), "unexpected '" + peek().text + "'");
            }

        private:
            std::vector<Token> toks_;
            std::size_t pos_ = 0;
            int lineno_;
            ModelFile & mf_;
            std::map<std::string, VarId, std::less<>> & names_;

            auto peek() const -> const Token & { return toks_[pos_]; }

            [[noreturn]] auto fail(const Token & t, const std::string & msg) const -> void
            {
                throw ParseError({lineno_, t.column}, msg);
            }

            auto expect(Tok kind, const char * what) -> Token
            {
                if (peek().kind != kind)
                    fail(peek(), std::string("expected ") + what);
                return toks_[pos_++];
            }

            auto expect_punct(const char * p) -> Token
            {
                if (peek().kind != Tok::Punct || peek().text != p)
                    fail(peek(), std::string("expected '") + p + "'");
                return toks_[pos_++];
            }

            auto accept_punct(const char * p) -> bool
            {
                if (peek().kind == Tok::Punct && peek().text == p) {
                    ++pos_;
                    return true;
                }
                return false;
            }

            auto var_ref() -> VarId
            {
                auto t = expect(Tok::Ident, "a variable name");
                auto it = names_.find(t.text);
                if (it == names_.end())
                    fail(t, "undeclared variable '" + t.text + "'");
                return it->second;
            }

            auto coefficient(const Token & t) -> Value
            {
                if (t.value == 0)
                    fail(t, "zero coefficient");
                return t.value;
            }

            // <int>*<name> or <name>
            auto term() -> LinearTerm
            {
                if (peek().kind == Tok::Int) {
                    auto c = toks_[pos_++];
                    expect_punct("*");
                    return {coefficient(c), var_ref()};
                }
                return {1, var_ref()};
            }

            auto add(Constraint c, SourceLoc at) -> void
            {
                mf_.model.constraints.push_back(std::move(c));
                mf_.constraint_locations.push_back(at);
            }

            auto parse_var(SourceLoc at) -> void
            {
                auto name = expect(Tok::Ident, "a variable name");
                if (name.text == "in")
                    fail(name, "expected a variable name");
                if (names_.count(name.text))
                    fail(name, "duplicate declaration of '" + name.text + "'");
                auto in = expect(Tok::Ident, "'in'");
                if (in.text != "in")
                    fail(in, "expected 'in'");

                FiniteDomain d;
                const auto & start = peek();
                try {
                    if (accept_punct("{")) {
                        std::vector<Value> vals;
                        vals.push_back(expect(Tok::Int, "an integer").value);
                        while (accept_punct(","))
                            vals.push_back(expect(Tok::Int, "an integer").value);
                        expect_punct("}");
                        d = FiniteDomain::of_values(vals);
                    }
                    else {
                        auto lo = expect(Tok::Int, "an integer or '{'");
                        expect_punct("..");
                        auto hi = expect(Tok::Int, "an integer");
                        if (lo.value > hi.value)
                            fail(lo, "empty range " + lo.text + ".." + hi.text);
                        d = FiniteDomain::interval(lo.value, hi.value);
                    }
                }
                catch (const DomainError & e) {
                    fail(start, e.what());
                }
                names_.emplace(name.text, mf_.model.add_var(name.text, std::move(d)));
                mf_.var_locations.push_back(at);
            }

            auto parse_lin() -> Constraint
            {
                NaryLinear nc;
                nc.c = expect(Tok::Int, "the constant term").value;
                while (! (peek().kind == Tok::Punct && peek().text == "="))
                    nc.terms.push_back(term());
                expect_punct("=");
                auto zero = expect(Tok::Int, "0");
                if (zero.value != 0)
                    fail(zero, "right-hand side must be 0");
                return nc;
            }

            auto parse_eq() -> Constraint
            {
                auto first = peek();
                auto lhs = term();
                expect_punct("=");
                auto rhs = term();
                Value c = 0;
                if (accept_punct("+"))
                    c = expect(Tok::Int, "an integer").value;
                else if (accept_punct("-")) {
                    auto t = expect(Tok::Int, "an integer");
                    if (t.value < 0)
                        fail(t, "unexpected sign");
                    c = -t.value;
                }
                BinaryLinear bc{lhs.coeff, lhs.var, rhs.coeff, rhs.var, c};
                if (bc.a < 0) {
                    if (bc.c == std::numeric_limits<Value>::min())
                        fail(first, "constant out of range");
                    bc = {-bc.a, bc.x, -bc.b, bc.y, -bc.c};
                }
                return bc;
            }

            auto parse_neq() -> Constraint
            {
                Disequality d;
                d.x = var_ref();
                d.y = var_ref();
                if (peek().kind == Tok::Int)
                    d.c = toks_[pos_++].value;
                return d;
            }

            auto parse_names(std::size_t at_least) -> std::vector<VarId>
            {
                std::vector<VarId> out;
                while (peek().kind == Tok::Ident)
                    out.push_back(var_ref());
                if (out.size() < at_least)
                    fail(peek(), "expected a variable name");
                return out;
            }

            auto parse_label() -> void
            {
                std::vector<bool> seen(mf_.model.vars.size(), false);
                while (peek().kind == Tok::Ident) {
                    const auto & t = peek();
                    auto v = var_ref();
                    if (seen[v.index])
                        fail(t, "variable '" + t.text + "' labelled twice");
                    seen[v.index] = true;
                    mf_.model.label.push_back(v);
                }
            }
        };

        // Rejects constraints whose arithmetic could overflow.
        auto check_model_capacity(const ModelFile & mf) -> void
        {
            Store s;
            for (const auto & v : mf.model.vars)
                s.new_var(v.domain, v.name);
            for (std::size_t i = 0; i < mf.model.constraints.size(); ++i) {
                try {
                    std::visit(
                        [&](const auto & k) {
                            using K = std::decay_t<decltype(k)>;
                            if constexpr (std::is_same_v<K, NaryLinear>)
                                check_capacity(s, k);
                            else if constexpr (std::is_same_v<K, BinaryLinear>)
                                check_capacity(s, k);
                            else if constexpr (std::is_same_v<K, Disequality>)
                                check_capacity(s, BinaryLinear{1, k.x, 1, k.y, k.c});
                        },
                        mf.model.constraints[i]);
                }
                catch (const CapacityError & e) {
                    throw ParseError(mf.constraint_locations[i], e.what());
                }
            }
        }
    }

    auto parse_model(std::string_view text) -> ModelFile
    {
        ModelFile mf;
        std::map<std::string, VarId, std::less<>> names;
        bool saw_label = false;
        int lineno = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto nl = text.find('\n', start);
            auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
            ++lineno;
            LineParser(lex_line(line, lineno), lineno, mf, names).parse(saw_label);
            if (nl == std::string_view::npos)
                break;
            start = nl + 1;
        }
        if (! saw_label)
            throw ParseError({lineno, 1}, "missing label statement");
        check_model_capacity(mf);
        return mf;
    }

    auto load_model_file(const std::string & path) -> ModelFile
    {
        std::ifstream in(path);
        if (! in)
            throw std::runtime_error("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_model(ss.str());
    }

    auto print_model(std::ostream & out, const Model & m) -> void
    {
        auto name = [&](VarId v) -> const std::string & { return m.vars[v.index].name; };
        for (const auto & v : m.vars) {
            out << "var " << v.name << " in ";
            if (v.domain.is_interval())
                out << v.domain.min() << ".." << v.domain.max();
            else {
                out << '{';
                bool first = true;
                v.domain.for_each([&](Value x) {
                    out << (first ? "" : ",") << x;
                    first = false;
                });
                out << '}';
            }
            out << '\n';
        }
        for (const auto & c : m.constraints) {
            std::visit(
                [&](const auto & k) {
                    using K = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<K, NaryLinear>) {
                        out << "lin " << k.c;
                        for (const auto & t : k.terms)
                            out << ' ' << t.coeff << '*' << name(t.var);
                        out << " = 0\n";
                    }
                    else if constexpr (std::is_same_v<K, BinaryLinear>)
                        out << "eq " << k.a << '*' << name(k.x) << " = " << k.b << '*' << name(k.y) << (k.c < 0 ? " - " : " + ")
                            << (k.c < 0 ? -k.c : k.c) << '\n';
                    else if constexpr (std::is_same_v<K, Disequality>)
                        out << "neq " << name(k.x) << ' ' << name(k.y) << ' ' << k.c << '\n';
                    else {
                        out << "alldistinct";
                        for (auto v : k.vars)
                            out << ' ' << name(v);
                        out << '\n';
                    }
                },
                c);
        }
        out << "label";
        for (auto v : m.label)
            out << ' ' << name(v);
        out << '\n';
    }

    auto print_model(const Model & m) -> std::string
    {
        std::ostringstream ss;
        print_model(ss, m);
        return ss.str();
    }
}
