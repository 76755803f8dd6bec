#include <amalg/logic.hh>
#include <amalg/detail/compiled.hh>

#include <algorithm>
#include <sstream>

namespace amalg {

auto Term::variable(std::string name) -> Term { return {Kind::Variable, std::move(name), 0, {}}; }
auto Term::param(int element) -> Term { return {Kind::Parameter, "", element, {}}; }
auto Term::constant(std::string name) -> Term { return {Kind::Constant, std::move(name), 0, {}}; }
auto Term::apply(std::string function, std::vector<Term> args) -> Term
{
    return {Kind::Apply, std::move(function), 0, std::move(args)};
}

struct Formula::Node {
    Kind kind;
    std::string name;
    std::vector<Term> terms;
    std::vector<Formula> children;
};

Formula::Formula(std::shared_ptr<const Node> node) :
    _node(std::move(node))
{
}

auto Formula::truth() -> Formula { return Formula(std::make_shared<const Node>(Node{Kind::And, "", {}, {}})); }
auto Formula::falsity() -> Formula { return Formula(std::make_shared<const Node>(Node{Kind::Or, "", {}, {}})); }

auto Formula::relation(std::string name, std::vector<Term> args) -> Formula
{
    return Formula(std::make_shared<const Node>(Node{Kind::Relation, std::move(name), std::move(args), {}}));
}

auto Formula::equal(Term lhs, Term rhs) -> Formula
{
    return Formula(std::make_shared<const Node>(Node{Kind::Equal, "", {std::move(lhs), std::move(rhs)}, {}}));
}

auto Formula::negation(Formula f) -> Formula
{
    return Formula(std::make_shared<const Node>(Node{Kind::Not, "", {}, {std::move(f)}}));
}

auto Formula::conjunction(std::vector<Formula> fs) -> Formula
{
    if (fs.size() == 1)
        return fs.front();
    return Formula(std::make_shared<const Node>(Node{Kind::And, "", {}, std::move(fs)}));
}

auto Formula::disjunction(std::vector<Formula> fs) -> Formula
{
    if (fs.size() == 1)
        return fs.front();
    return Formula(std::make_shared<const Node>(Node{Kind::Or, "", {}, std::move(fs)}));
}

auto Formula::implication(Formula lhs, Formula rhs) -> Formula
{
    return Formula(std::make_shared<const Node>(Node{Kind::Implies, "", {}, {std::move(lhs), std::move(rhs)}}));
}

auto Formula::forall(std::string var, Formula body) -> Formula
{
    return Formula(std::make_shared<const Node>(Node{Kind::Forall, std::move(var), {}, {std::move(body)}}));
}

auto Formula::exists(std::string var, Formula body) -> Formula
{
    return Formula(std::make_shared<const Node>(Node{Kind::Exists, std::move(var), {}, {std::move(body)}}));
}

auto Formula::kind() const -> Kind { return _node->kind; }
auto Formula::name() const -> const std::string & { return _node->name; }
auto Formula::terms() const -> const std::vector<Term> & { return _node->terms; }
auto Formula::children() const -> const std::vector<Formula> & { return _node->children; }
auto Formula::body() const -> const Formula & { return _node->children.front(); }
auto Formula::is_true() const -> bool { return _node->kind == Kind::And && _node->children.empty(); }
auto Formula::is_false() const -> bool { return _node->kind == Kind::Or && _node->children.empty(); }

auto operator==(const Formula & a, const Formula & b) -> bool
{
    if (a._node == b._node)
        return true;
    return a._node->kind == b._node->kind && a._node->name == b._node->name && a._node->terms == b._node->terms
        && a._node->children == b._node->children;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    enum class Kind { Ident, Param, LParen, RParen, Comma, Dot, Not, And, Or, Arrow, Eq, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

auto tokenize(std::string_view text) -> std::vector<Token>
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_char = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        switch (c) {
            case '(': out.push_back({Token::Kind::LParen, "(", start}); ++i; continue;
            case ')': out.push_back({Token::Kind::RParen, ")", start}); ++i; continue;
            case ',': out.push_back({Token::Kind::Comma, ",", start}); ++i; continue;
            case '.': out.push_back({Token::Kind::Dot, ".", start}); ++i; continue;
            case '!': out.push_back({Token::Kind::Not, "!", start}); ++i; continue;
            case '&': out.push_back({Token::Kind::And, "&", start}); ++i; continue;
            case '|': out.push_back({Token::Kind::Or, "|", start}); ++i; continue;
            case '=': out.push_back({Token::Kind::Eq, "=", start}); ++i; continue;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    out.push_back({Token::Kind::Arrow, "->", start});
                    i += 2;
                    continue;
                }
                throw Error(ErrorCode::SyntaxError, "expected '->'", start);
            default: break;
        }
        bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
        if (! alpha)
            throw Error(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", start);
        while (i < text.size() && ident_char(text[i]))
            ++i;
        std::string word(text.substr(start, i - start));
        bool param = word.size() >= 2 && word[0] == 'c'
            && std::all_of(word.begin() + 1, word.end(), [](char d) { return d >= '0' && d <= '9'; });
        out.push_back({param ? Token::Kind::Param : Token::Kind::Ident, word, start});
    }
    out.push_back({Token::Kind::End, "", text.size()});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const Signature & sig, const std::set<std::string> & free_vars) :
        _tokens(tokenize(text)),
        _sig(sig),
        _free(free_vars)
    {
    }

    auto parse() -> Formula
    {
        auto f = implication();
        if (peek().kind != Token::Kind::End)
            throw Error(ErrorCode::SyntaxError, "unexpected '" + peek().text + "'", peek().pos);
        return f;
    }

private:
    auto peek() const -> const Token & { return _tokens[_at]; }
    auto next() -> const Token & { return _tokens[_at++]; }

    auto accept(Token::Kind k) -> bool
    {
        if (peek().kind != k)
            return false;
        ++_at;
        return true;
    }

    void expect(Token::Kind k, const char * what)
    {
        if (! accept(k))
            throw Error(ErrorCode::SyntaxError, std::string("expected ") + what, peek().pos);
    }

    auto implication() -> Formula
    {
        auto lhs = disjunction();
        if (accept(Token::Kind::Arrow))
            return Formula::implication(lhs, implication());
        return lhs;
    }

    auto disjunction() -> Formula
    {
        std::vector<Formula> parts{conjunction()};
        while (accept(Token::Kind::Or))
            parts.push_back(conjunction());
        return Formula::disjunction(std::move(parts));
    }

    auto conjunction() -> Formula
    {
        std::vector<Formula> parts{unary()};
        while (accept(Token::Kind::And))
            parts.push_back(unary());
        return Formula::conjunction(std::move(parts));
    }

    auto unary() -> Formula
    {
        if (accept(Token::Kind::Not))
            return Formula::negation(unary());
        if (peek().kind == Token::Kind::Ident && (peek().text == "forall" || peek().text == "exists"))
            return quantified();
        return primary();
    }

    auto quantified() -> Formula
    {
        bool universal = next().text == "forall";
        std::vector<std::string> vars;
        while (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Param) {
            auto & tok = next();
            if (! variable_shaped(tok.text) || declared(tok.text))
                throw Error(ErrorCode::SyntaxError, "'" + tok.text + "' cannot be bound", tok.pos);
            vars.push_back(tok.text);
        }
        if (vars.empty())
            throw Error(ErrorCode::SyntaxError, "quantifier without variables", peek().pos);
        expect(Token::Kind::Dot, "'.' after quantified variables");
        for (auto & v : vars)
            _bound.push_back(v);
        auto body = implication();
        _bound.resize(_bound.size() - vars.size());
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
            body = universal ? Formula::forall(*it, body) : Formula::exists(*it, body);
        return body;
    }

    auto primary() -> Formula
    {
        if (accept(Token::Kind::LParen)) {
            auto f = implication();
            expect(Token::Kind::RParen, "')'");
            return f;
        }
        if (peek().kind == Token::Kind::Ident && peek().text == "true") {
            next();
            return Formula::truth();
        }
        if (peek().kind == Token::Kind::Ident && peek().text == "false") {
            next();
            return Formula::falsity();
        }
        if (peek().kind == Token::Kind::Ident && _sig.has_relation(peek().text)) {
            auto & tok = next();
            int arity = _sig.relation_arity(tok.text);
            auto args = arguments(tok);
            if (static_cast<int>(args.size()) != arity)
                throw Error(ErrorCode::ArityMismatch,
                    "'" + tok.text + "' expects " + std::to_string(arity) + " arguments", tok.pos);
            return Formula::relation(tok.text, std::move(args));
        }
        auto lhs = term();
        expect(Token::Kind::Eq, "'=' or a relation atom");
        auto rhs = term();
        return Formula::equal(std::move(lhs), std::move(rhs));
    }

    auto arguments(const Token & head) -> std::vector<Term>
    {
        if (! accept(Token::Kind::LParen))
            throw Error(ErrorCode::ArityMismatch, "'" + head.text + "' used without arguments", head.pos);
        std::vector<Term> args{term()};
        while (accept(Token::Kind::Comma))
            args.push_back(term());
        expect(Token::Kind::RParen, "')'");
        return args;
    }

    auto term() -> Term
    {
        auto & tok = next();
        if (tok.kind == Token::Kind::Param)
            return Term::param(std::stoi(tok.text.substr(1)));
        if (tok.kind != Token::Kind::Ident)
            throw Error(ErrorCode::SyntaxError, "expected a term", tok.pos);
        if (_sig.has_function(tok.text)) {
            int arity = _sig.function_arity(tok.text);
            auto args = arguments(tok);
            if (static_cast<int>(args.size()) != arity)
                throw Error(ErrorCode::ArityMismatch,
                    "'" + tok.text + "' expects " + std::to_string(arity) + " arguments", tok.pos);
            return Term::apply(tok.text, std::move(args));
        }
        if (_sig.has_constant(tok.text))
            return Term::constant(tok.text);
        if (_sig.has_relation(tok.text))
            throw Error(ErrorCode::ArityMismatch, "relation '" + tok.text + "' used as a term", tok.pos);
        if (peek().kind == Token::Kind::LParen)
            throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + tok.text + "'", tok.pos);
        if (! variable_shaped(tok.text))
            throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + tok.text + "'", tok.pos);
        if (std::find(_bound.begin(), _bound.end(), tok.text) == _bound.end() && ! _free.count(tok.text))
            throw Error(ErrorCode::UnboundVariable, "variable '" + tok.text + "' is not bound", tok.pos);
        return Term::variable(tok.text);
    }

    static auto variable_shaped(const std::string & s) -> bool
    {
        static const std::set<std::string> keywords = {"forall", "exists", "true", "false"};
        return ! s.empty() && s[0] >= 'a' && s[0] <= 'z' && ! keywords.count(s);
    }

    auto declared(const std::string & s) const -> bool
    {
        return _sig.has_relation(s) || _sig.has_function(s) || _sig.has_constant(s);
    }

    std::vector<Token> _tokens;
    std::size_t _at = 0;
    const Signature & _sig;
    const std::set<std::string> & _free;
    std::vector<std::string> _bound;
};

} // namespace

auto parse_formula(std::string_view text, const Signature & sig, const std::set<std::string> & free_vars) -> Formula
{
    return Parser(text, sig, free_vars).parse();
}

auto make_theory(std::string name, Signature sig, const std::vector<std::string> & sentences) -> Theory
{
    Theory t{std::move(name), std::move(sig), {}};
    for (auto & s : sentences)
        t.sentences.push_back(parse_formula(s, t.sig));
    return t;
}

// --------------------------------------------------------------- printing

auto to_string(const Term & t) -> std::string
{
    switch (t.kind) {
        case Term::Kind::Variable:
        case Term::Kind::Constant: return t.name;
        case Term::Kind::Parameter: return "c" + std::to_string(t.parameter);
        case Term::Kind::Apply: {
            std::string s = t.name + "(";
            for (std::size_t i = 0; i < t.args.size(); ++i)
                s += (i ? "," : "") + to_string(t.args[i]);
            return s + ")";
        }
    }
    return {};
}

namespace {

auto precedence(const Formula & f) -> int
{
    switch (f.kind()) {
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: return 0;
        case Formula::Kind::Implies: return 1;
        case Formula::Kind::Or: return f.children().empty() ? 5 : 2;
        case Formula::Kind::And: return f.children().empty() ? 5 : 3;
        case Formula::Kind::Not: return 4;
        case Formula::Kind::Relation:
        case Formula::Kind::Equal: return 5;
    }
    return 5;
}

void print(std::ostringstream & out, const Formula & f, int min_prec)
{
    bool wrap = precedence(f) < min_prec;
    if (wrap)
        out << "(";
    switch (f.kind()) {
        case Formula::Kind::Relation: {
            out << f.name() << "(";
            for (std::size_t i = 0; i < f.terms().size(); ++i)
                out << (i ? "," : "") << to_string(f.terms()[i]);
            out << ")";
            break;
        }
        case Formula::Kind::Equal:
            out << to_string(f.terms()[0]) << " = " << to_string(f.terms()[1]);
            break;
        case Formula::Kind::Not:
            out << "!";
            print(out, f.body(), f.body().kind() == Formula::Kind::Equal ? 6 : 4);
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            if (f.children().empty()) {
                out << (f.kind() == Formula::Kind::And ? "true" : "false");
                break;
            }
            bool conj = f.kind() == Formula::Kind::And;
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                if (i)
                    out << (conj ? " & " : " | ");
                print(out, f.children()[i], conj ? 4 : 3);
            }
            break;
        }
        case Formula::Kind::Implies:
            print(out, f.children()[0], 2);
            out << " -> ";
            print(out, f.children()[1], 1);
            break;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            out << (f.kind() == Formula::Kind::Forall ? "forall" : "exists");
            const Formula * cur = &f;
            while (cur->kind() == f.kind()) {
                out << " " << cur->name();
                cur = &cur->body();
            }
            out << ". ";
            print(out, *cur, 0);
            break;
        }
    }
    if (wrap)
        out << ")";
}

} // namespace

auto to_string(const Formula & f) -> std::string
{
    std::ostringstream out;
    print(out, f, 0);
    return out.str();
}

// ------------------------------------------------------------- validation

namespace {

void validate_term(const Term & t, const Signature & sig, std::vector<std::string> & bound,
    const std::set<std::string> & free_vars)
{
    switch (t.kind) {
        case Term::Kind::Variable:
            if (std::find(bound.begin(), bound.end(), t.name) == bound.end() && ! free_vars.count(t.name))
                fail(ErrorCode::UnboundVariable, "variable '" + t.name + "' is not bound");
            return;
        case Term::Kind::Parameter:
            if (t.parameter < 0)
                fail(ErrorCode::RangeError, "negative parameter");
            return;
        case Term::Kind::Constant:
            if (! sig.has_constant(t.name))
                fail(ErrorCode::UnknownSymbol, "unknown constant '" + t.name + "'");
            return;
        case Term::Kind::Apply:
            if (! sig.has_function(t.name))
                fail(ErrorCode::UnknownSymbol, "unknown function '" + t.name + "'");
            if (sig.function_arity(t.name) != static_cast<int>(t.args.size()))
                fail(ErrorCode::ArityMismatch, "wrong number of arguments for '" + t.name + "'");
            for (auto & a : t.args)
                validate_term(a, sig, bound, free_vars);
            return;
    }
}

void validate_rec(const Formula & f, const Signature & sig, std::vector<std::string> & bound,
    const std::set<std::string> & free_vars)
{
    switch (f.kind()) {
        case Formula::Kind::Relation:
            if (! sig.has_relation(f.name()))
                fail(ErrorCode::UnknownSymbol, "unknown relation '" + f.name() + "'");
            if (sig.relation_arity(f.name()) != static_cast<int>(f.terms().size()))
                fail(ErrorCode::ArityMismatch, "wrong number of arguments for '" + f.name() + "'");
            [[fallthrough]];
        case Formula::Kind::Equal:
            for (auto & t : f.terms())
                validate_term(t, sig, bound, free_vars);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            bound.push_back(f.name());
            validate_rec(f.body(), sig, bound, free_vars);
            bound.pop_back();
            return;
        default:
            for (auto & c : f.children())
                validate_rec(c, sig, bound, free_vars);
    }
}

void collect_free(const Formula & f, std::vector<std::string> & bound, std::set<std::string> & out)
{
    auto term_vars = [&](const Term & t, const auto & self) -> void {
        if (t.kind == Term::Kind::Variable && std::find(bound.begin(), bound.end(), t.name) == bound.end())
            out.insert(t.name);
        for (auto & a : t.args)
            self(a, self);
    };
    switch (f.kind()) {
        case Formula::Kind::Relation:
        case Formula::Kind::Equal:
            for (auto & t : f.terms())
                term_vars(t, term_vars);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            bound.push_back(f.name());
            collect_free(f.body(), bound, out);
            bound.pop_back();
            return;
        default:
            for (auto & c : f.children())
                collect_free(c, bound, out);
    }
}

void collect_params(const Term & t, std::set<int> & out)
{
    if (t.kind == Term::Kind::Parameter)
        out.insert(t.parameter);
    for (auto & a : t.args)
        collect_params(a, out);
}

void collect_params(const Formula & f, std::set<int> & out)
{
    for (auto & t : f.terms())
        collect_params(t, out);
    for (auto & c : f.children())
        collect_params(c, out);
}

} // namespace

void validate(const Formula & f, const Signature & sig, const std::set<std::string> & free_vars)
{
    std::vector<std::string> bound;
    validate_rec(f, sig, bound, free_vars);
}

auto free_variables(const Formula & f) -> std::set<std::string>
{
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

auto parameters(const Formula & f) -> std::set<int>
{
    std::set<int> out;
    collect_params(f, out);
    return out;
}

// ------------------------------------------------------------- evaluation

namespace detail {

namespace {

class Compiler {
public:
    Compiler(const Signature & sig, const std::vector<std::string> & free_vars) :
        _sig(sig),
        _scope(free_vars)
    {
        _slots = static_cast<int>(free_vars.size());
    }

    auto node(const Formula & f) -> CNode
    {
        CNode n{f.kind(), 0, {}, {}};
        switch (f.kind()) {
            case Formula::Kind::Relation:
                n.index = _sig.relation_index(f.name());
                if (n.index < 0)
                    fail(ErrorCode::UnknownSymbol, "unknown relation '" + f.name() + "'");
                if (_sig.relation_arity(f.name()) != static_cast<int>(f.terms().size()))
                    fail(ErrorCode::ArityMismatch, "wrong number of arguments for '" + f.name() + "'");
                [[fallthrough]];
            case Formula::Kind::Equal:
                for (auto & t : f.terms())
                    n.terms.push_back(term(t));
                return n;
            case Formula::Kind::Forall:
            case Formula::Kind::Exists:
                n.index = static_cast<int>(_scope.size());
                _scope.push_back(f.name());
                _slots = std::max(_slots, static_cast<int>(_scope.size()));
                n.children.push_back(node(f.body()));
                _scope.pop_back();
                return n;
            default:
                for (auto & c : f.children())
                    n.children.push_back(node(c));
                return n;
        }
    }

    auto term(const Term & t) -> CTerm
    {
        switch (t.kind) {
            case Term::Kind::Variable: {
                auto it = std::find(_scope.rbegin(), _scope.rend(), t.name);
                if (it == _scope.rend())
                    fail(ErrorCode::UnboundVariable, "variable '" + t.name + "' is not bound");
                int slot = static_cast<int>(std::distance(it, _scope.rend())) - 1;
                return {CTerm::Kind::Variable, slot, {}};
            }
            case Term::Kind::Parameter:
                _max_parameter = std::max(_max_parameter, t.parameter);
                return {CTerm::Kind::Parameter, t.parameter, {}};
            case Term::Kind::Constant: {
                int idx = _sig.constant_index(t.name);
                if (idx < 0)
                    fail(ErrorCode::UnknownSymbol, "unknown constant '" + t.name + "'");
                return {CTerm::Kind::Constant, idx, {}};
            }
            case Term::Kind::Apply: {
                int idx = _sig.function_index(t.name);
                if (idx < 0)
                    fail(ErrorCode::UnknownSymbol, "unknown function '" + t.name + "'");
                if (_sig.function_arity(t.name) != static_cast<int>(t.args.size()))
                    fail(ErrorCode::ArityMismatch, "wrong number of arguments for '" + t.name + "'");
                if (t.args.size() > static_cast<std::size_t>(max_arity))
                    fail(ErrorCode::ArityMismatch, "arity above the supported maximum");
                CTerm out{CTerm::Kind::Apply, idx, {}};
                for (auto & a : t.args)
                    out.args.push_back(term(a));
                return out;
            }
        }
        return {};
    }

    int _slots = 0;
    int _max_parameter = -1;

private:
    const Signature & _sig;
    std::vector<std::string> _scope;
};

} // namespace

CompiledFormula::CompiledFormula(const Formula & f, const Signature & sig, const std::vector<std::string> & free_vars)
{
    Compiler c(sig, free_vars);
    _root = c.node(f);
    _slots = c._slots;
    _max_parameter = c._max_parameter;
}

TotalModel::TotalModel(const FinStructure & m) :
    _m(m)
{
    for (auto & [_, a] : m.signature().relations())
        _rel_arity.push_back(a);
    for (auto & [_, a] : m.signature().functions())
        _func_arity.push_back(a);
}

auto TotalModel::rel(int idx, const int * args) const -> Truth
{
    std::size_t pos = 0, n = static_cast<std::size_t>(_m.size());
    for (int i = 0; i < _rel_arity[static_cast<std::size_t>(idx)]; ++i)
        pos = pos * n + static_cast<std::size_t>(args[i]);
    return truth_of(_m.relation_table(static_cast<std::size_t>(idx))[pos] != 0);
}

auto TotalModel::func(int idx, const int * args) const -> int
{
    std::size_t pos = 0, n = static_cast<std::size_t>(_m.size());
    for (int i = 0; i < _func_arity[static_cast<std::size_t>(idx)]; ++i)
        pos = pos * n + static_cast<std::size_t>(args[i]);
    return _m.function_table(static_cast<std::size_t>(idx))[pos];
}

} // namespace detail

auto evaluate(const FinStructure & m, const Formula & f, const Environment & env) -> bool
{
    std::vector<std::string> names;
    std::vector<int> values;
    for (auto & [name, value] : env) {
        if (value < 0 || value >= m.size())
            fail(ErrorCode::RangeError, "environment value outside universe");
        names.push_back(name);
        values.push_back(value);
    }
    detail::CompiledFormula compiled(f, m.signature(), names);
    if (compiled.max_parameter() >= m.size())
        fail(ErrorCode::RangeError, "parameter c" + std::to_string(compiled.max_parameter()) + " outside universe");
    values.resize(static_cast<std::size_t>(compiled.slots()), 0);
    return compiled.eval(detail::TotalModel(m), values) == detail::Truth::True;
}

auto models_theory(const FinStructure & m, const Theory & t) -> bool
{
    if (! t.sig.is_subsignature_of(m.signature()))
        fail(ErrorCode::NotSubsignature, "theory signature is not a subsignature of the structure's");
    for (auto & s : t.sentences)
        if (! evaluate(m, s))
            return false;
    return true;
}

// --------------------------------------------------------- classification

auto to_string(SyntacticClass c) -> std::string_view
{
    switch (c) {
        case SyntacticClass::Universal: return "universal";
        case SyntacticClass::Existential: return "existential";
        case SyntacticClass::Inductive: return "inductive";
        case SyntacticClass::Other: return "other";
    }
    return "other";
}

namespace {

auto nnf_rec(const Formula & f, bool negate) -> Formula
{
    switch (f.kind()) {
        case Formula::Kind::Relation:
        case Formula::Kind::Equal:
            return negate ? Formula::negation(f) : f;
        case Formula::Kind::Not:
            return nnf_rec(f.body(), ! negate);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<Formula> parts;
            for (auto & c : f.children())
                parts.push_back(nnf_rec(c, negate));
            bool conj = (f.kind() == Formula::Kind::And) != negate;
            return conj ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
        }
        case Formula::Kind::Implies: {
            std::vector<Formula> parts{nnf_rec(f.children()[0], ! negate), nnf_rec(f.children()[1], negate)};
            return negate ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            bool universal = (f.kind() == Formula::Kind::Forall) != negate;
            auto body = nnf_rec(f.body(), negate);
            return universal ? Formula::forall(f.name(), body) : Formula::exists(f.name(), body);
        }
    }
    return f;
}

struct Shape {
    bool has_forall = false;
    bool has_exists = false;
    bool forall_under_exists = false;
};

void shape_of(const Formula & f, bool under_exists, Shape & s)
{
    switch (f.kind()) {
        case Formula::Kind::Forall:
            s.has_forall = true;
            if (under_exists)
                s.forall_under_exists = true;
            break;
        case Formula::Kind::Exists:
            s.has_exists = true;
            under_exists = true;
            break;
        default: break;
    }
    for (auto & c : f.children())
        shape_of(c, under_exists, s);
}

} // namespace

auto nnf(const Formula & f) -> Formula
{
    return nnf_rec(f, false);
}

auto classify(const Formula & f) -> SyntacticClass
{
    Shape s;
    shape_of(nnf(f), false, s);
    if (! s.has_exists)
        return SyntacticClass::Universal;
    if (! s.has_forall)
        return SyntacticClass::Existential;
    if (! s.forall_under_exists)
        return SyntacticClass::Inductive;
    return SyntacticClass::Other;
}

auto is_universal(const Theory & t) -> bool
{
    return std::all_of(t.sentences.begin(), t.sentences.end(),
        [](const Formula & f) { return classify(f) == SyntacticClass::Universal; });
}

auto is_inductive(const Theory & t) -> bool
{
    return std::all_of(t.sentences.begin(), t.sentences.end(),
        [](const Formula & f) { return classify(f) != SyntacticClass::Other; });
}

// ------------------------------------------------------- existentialize

namespace {

auto param_term(int e, const std::map<int, std::string> & vars) -> Term
{
    auto it = vars.find(e);
    return it == vars.end() ? Term::param(e) : Term::variable(it->second);
}

auto literal_with(const DiagramLiteral & lit, const std::map<int, std::string> & vars) -> Formula
{
    Formula atom = Formula::truth();
    switch (lit.kind) {
        case DiagramLiteral::Kind::Relation: {
            std::vector<Term> args;
            for (int a : lit.args)
                args.push_back(param_term(a, vars));
            atom = Formula::relation(lit.symbol, std::move(args));
            break;
        }
        case DiagramLiteral::Kind::Function: {
            std::vector<Term> args;
            for (int a : lit.args)
                args.push_back(param_term(a, vars));
            atom = Formula::equal(Term::apply(lit.symbol, std::move(args)), param_term(lit.value, vars));
            break;
        }
        case DiagramLiteral::Kind::Constant:
            atom = Formula::equal(Term::constant(lit.symbol), param_term(lit.value, vars));
            break;
        case DiagramLiteral::Kind::Equality:
            atom = Formula::equal(param_term(lit.args[0], vars), param_term(lit.args[1], vars));
            break;
    }
    return lit.positive ? atom : Formula::negation(atom);
}

} // namespace

auto literal_formula(const DiagramLiteral & lit) -> Formula
{
    return literal_with(lit, {});
}

auto existentialize(const std::set<DiagramLiteral> & lits, const std::set<int> & keep) -> Formula
{
    std::set<int> elems;
    for (auto & lit : lits) {
        elems.insert(lit.args.begin(), lit.args.end());
        if (lit.kind == DiagramLiteral::Kind::Function || lit.kind == DiagramLiteral::Kind::Constant)
            elems.insert(lit.value);
    }
    std::map<int, std::string> vars;
    std::vector<std::string> order;
    for (int e : elems)
        if (! keep.count(e)) {
            order.push_back("x" + std::to_string(order.size() + 1));
            vars[e] = order.back();
        }
    std::vector<Formula> parts;
    for (auto & lit : lits)
        parts.push_back(literal_with(lit, vars));
    Formula body = Formula::conjunction(std::move(parts));
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        body = Formula::exists(*it, body);
    return body;
}

namespace {

auto rename_term(const Term & t, const std::vector<int> & map) -> Term
{
    if (t.kind == Term::Kind::Parameter) {
        if (t.parameter < 0 || t.parameter >= static_cast<int>(map.size()) || map[static_cast<std::size_t>(t.parameter)] < 0)
            fail(ErrorCode::RangeError, "parameter c" + std::to_string(t.parameter) + " has no image");
        return Term::param(map[static_cast<std::size_t>(t.parameter)]);
    }
    Term out = t;
    for (auto & a : out.args)
        a = rename_term(a, map);
    return out;
}

} // namespace

auto rename_parameters(const Formula & f, const std::vector<int> & map) -> Formula
{
    switch (f.kind()) {
        case Formula::Kind::Relation: {
            std::vector<Term> ts;
            for (auto & t : f.terms())
                ts.push_back(rename_term(t, map));
            return Formula::relation(f.name(), std::move(ts));
        }
        case Formula::Kind::Equal:
            return Formula::equal(rename_term(f.terms()[0], map), rename_term(f.terms()[1], map));
        case Formula::Kind::Not: return Formula::negation(rename_parameters(f.body(), map));
        case Formula::Kind::Forall: return Formula::forall(f.name(), rename_parameters(f.body(), map));
        case Formula::Kind::Exists: return Formula::exists(f.name(), rename_parameters(f.body(), map));
        case Formula::Kind::Implies:
            return Formula::implication(rename_parameters(f.children()[0], map), rename_parameters(f.children()[1], map));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<Formula> parts;
            for (auto & c : f.children())
                parts.push_back(rename_parameters(c, map));
            if (parts.empty())
                return f;
            return f.kind() == Formula::Kind::And ? Formula::conjunction(std::move(parts))
                                                  : Formula::disjunction(std::move(parts));
        }
    }
    return f;
}

namespace {

using Scope = std::vector<std::string>;

auto alpha_term(const Term & a, const Term & b, const Scope & sa, const Scope & sb) -> bool
{
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
        case Term::Kind::Variable: {
            auto ia = std::find(sa.rbegin(), sa.rend(), a.name);
            auto ib = std::find(sb.rbegin(), sb.rend(), b.name);
            if (ia == sa.rend() || ib == sb.rend())
                return ia == sa.rend() && ib == sb.rend() && a.name == b.name;
            return std::distance(sa.rbegin(), ia) == std::distance(sb.rbegin(), ib);
        }
        case Term::Kind::Parameter: return a.parameter == b.parameter;
        case Term::Kind::Constant: return a.name == b.name;
        case Term::Kind::Apply:
            if (a.name != b.name || a.args.size() != b.args.size())
                return false;
            for (std::size_t i = 0; i < a.args.size(); ++i)
                if (! alpha_term(a.args[i], b.args[i], sa, sb))
                    return false;
            return true;
    }
    return false;
}

auto alpha_rec(const Formula & a, const Formula & b, Scope & sa, Scope & sb) -> bool
{
    if (a.kind() != b.kind() || a.children().size() != b.children().size() || a.terms().size() != b.terms().size())
        return false;
    switch (a.kind()) {
        case Formula::Kind::Relation:
            if (a.name() != b.name())
                return false;
            [[fallthrough]];
        case Formula::Kind::Equal:
            for (std::size_t i = 0; i < a.terms().size(); ++i)
                if (! alpha_term(a.terms()[i], b.terms()[i], sa, sb))
                    return false;
            return true;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            sa.push_back(a.name());
            sb.push_back(b.name());
            bool ok = alpha_rec(a.body(), b.body(), sa, sb);
            sa.pop_back();
            sb.pop_back();
            return ok;
        }
        default:
            for (std::size_t i = 0; i < a.children().size(); ++i)
                if (! alpha_rec(a.children()[i], b.children()[i], sa, sb))
                    return false;
            return true;
    }
}

} // namespace

auto alpha_equivalent(const Formula & a, const Formula & b) -> bool
{
    Scope sa, sb;
    return alpha_rec(a, b, sa, sb);
}

} // namespace amalg
