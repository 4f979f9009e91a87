#include "gva/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace gva {

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#';
}

struct Token {
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
    bool end = false;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (pos_ >= text_.size()) {
            tok.end = true;
            return tok;
        }
        char c = text_[pos_];
        if (ident_char(c)) {
            while (pos_ < text_.size() && ident_char(text_[pos_])) tok.text += take();
            return tok;
        }
        static const std::vector<std::string> twochar = {"->", "==", "!=", "&&", "||"};
        if (pos_ + 1 < text_.size()) {
            std::string two = text_.substr(pos_, 2);
            for (const auto& t : twochar)
                if (two == t) {
                    take();
                    take();
                    tok.text = two;
                    return tok;
                }
        }
        if (std::string("{}:;,@=()").find(c) != std::string::npos) {
            tok.text = std::string(1, take());
            return tok;
        }
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }

private:
    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

const std::set<std::string> kReservedWords = {"eps",  "true",   "init", "accept",
                                              "on",   "if",     "read", "reassign",
                                              "gva",  "nfma",   "fa"};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { advance(); }

    ParsedAutomaton parse() {
        std::string kind = expect_ident("automaton kind (gva, nfma or fa)");
        if (kind == "gva") return parse_gva();
        if (kind == "nfma") return parse_nfma();
        if (kind == "fa") return parse_fa();
        throw ParseError(prev_.line, prev_.col, "expected 'gva', 'nfma' or 'fa'");
    }

private:
    void advance() {
        prev_ = cur_;
        cur_ = lexer_.next();
    }

    bool peek(const std::string& text) const { return !cur_.end && cur_.text == text; }

    void expect(const std::string& text) {
        if (!peek(text))
            throw ParseError(cur_.line, cur_.col, "expected '" + text + "'");
        advance();
    }

    std::string expect_ident(const std::string& what) {
        if (cur_.end || cur_.text.empty() || !ident_char(cur_.text[0]))
            throw ParseError(cur_.line, cur_.col, "expected " + what);
        std::string text = cur_.text;
        advance();
        return text;
    }

    std::string expect_name(const std::string& what) {
        Token at = cur_;
        std::string text = expect_ident(what);
        if (kReservedWords.count(text))
            throw ParseError(at.line, at.col, "'" + text + "' is a reserved word");
        return text;
    }

    int expect_int(const std::string& what) {
        Token at = cur_;
        std::string text = expect_ident(what);
        if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) {
                return c >= '0' && c <= '9';
            }))
            throw ParseError(at.line, at.col, "expected " + what);
        return std::stoi(text);
    }

    Letter expect_letter_decl() {
        Token at = cur_;
        std::string name = expect_name("a letter");
        if (name.rfind("#fresh", 0) == 0)
            throw ParseError(at.line, at.col, "letter names beginning with '#fresh' are reserved");
        return Letter{name};
    }

    template <typename Fn>
    void comma_list(Fn&& each) {
        each();
        while (peek(",")) {
            advance();
            each();
        }
        expect(";");
    }

    void parse_states(std::set<StateId>& states, std::set<StateId>& initial,
                      std::set<StateId>& accepting) {
        comma_list([&] {
            StateId q = expect_name("a state");
            states.insert(q);
            while (peek("init") || peek("accept")) {
                if (cur_.text == "init")
                    initial.insert(q);
                else
                    accepting.insert(q);
                advance();
            }
        });
    }

    Term parse_term(const Gva& a) {
        Token at = cur_;
        std::string name = expect_ident("a letter or variable");
        if (name == "true" || kReservedWords.count(name))
            throw ParseError(at.line, at.col, "'" + name + "' is a reserved word");
        if (a.vars.count(Variable{name})) return Variable{name};
        if (a.constants.count(Letter{name})) return Letter{name};
        throw ParseError(at.line, at.col, "'" + name + "' is not a declared letter or variable");
    }

    Guard parse_conjunction(const Gva& a) {
        Guard g;
        while (true) {
            if (peek("true")) {
                advance();
                g.atoms.push_back(GuardAtom::truth());
            } else {
                Term lhs = parse_term(a);
                bool eq;
                if (peek("==")) {
                    eq = true;
                } else if (peek("!=")) {
                    eq = false;
                } else {
                    throw ParseError(cur_.line, cur_.col, "expected '==' or '!='");
                }
                advance();
                Term rhs = parse_term(a);
                g.atoms.push_back(eq ? GuardAtom::eq(lhs, rhs) : GuardAtom::neq(lhs, rhs));
            }
            if (!peek("&&")) break;
            advance();
        }
        return g;
    }

    GuardDisjunction parse_guard(const Gva& a) {
        GuardDisjunction disjuncts;
        disjuncts.push_back(parse_conjunction(a));
        while (peek("||")) {
            advance();
            disjuncts.push_back(parse_conjunction(a));
        }
        return disjuncts;
    }

    Gva parse_gva() {
        Gva a;
        a.name = expect_name("an automaton name");
        expect("{");
        while (!peek("}")) {
            Token at = cur_;
            std::string section = expect_ident("a section");
            expect(":");
            if (section == "letters") {
                comma_list([&] {
                    Token lt = cur_;
                    Letter l = expect_letter_decl();
                    if (a.vars.count(Variable{l.name}))
                        throw ParseError(lt.line, lt.col,
                                         "'" + l.name + "' is already declared as a variable");
                    a.constants.insert(l);
                });
            } else if (section == "vars") {
                comma_list([&] {
                    Token vt = cur_;
                    Variable v{expect_name("a variable")};
                    if (a.constants.count(Letter{v.name}))
                        throw ParseError(vt.line, vt.col,
                                         "'" + v.name + "' is already declared as a letter");
                    a.vars.insert(v);
                });
            } else if (section == "states") {
                parse_states(a.states, a.initial, a.accepting);
            } else if (section == "refresh") {
                Token vt = cur_;
                Variable x{expect_name("a variable")};
                if (!a.vars.count(x))
                    throw ParseError(vt.line, vt.col, "'" + x.name + "' is not a declared variable");
                expect("@");
                comma_list([&] {
                    Token st = cur_;
                    StateId q = expect_name("a state");
                    if (!a.states.count(q))
                        throw ParseError(st.line, st.col, "'" + q + "' is not a declared state");
                    a.refresh[x].insert(q);
                });
            } else if (section == "trans") {
                parse_gva_transition(a);
            } else {
                throw ParseError(at.line, at.col, "unknown section '" + section + "'");
            }
        }
        expect("}");
        if (!cur_.end) throw ParseError(cur_.line, cur_.col, "expected end of input");
        return a;
    }

    void parse_gva_transition(Gva& a) {
        Token ft = cur_;
        StateId from = expect_name("a state");
        if (!a.states.count(from))
            throw ParseError(ft.line, ft.col, "'" + from + "' is not a declared state");
        expect("->");
        Token tt = cur_;
        StateId to = expect_name("a state");
        if (!a.states.count(to))
            throw ParseError(tt.line, tt.col, "'" + to + "' is not a declared state");
        expect("on");

        Symbol symbol = Epsilon{};
        if (peek("eps")) {
            advance();
        } else {
            symbol = term_to_symbol(parse_term(a));
        }

        GuardDisjunction guard{Guard::truth()};
        if (peek("if")) {
            advance();
            guard = parse_guard(a);
        }
        expect(";");

        for (auto& g : normalize_disjunction(guard))
            a.transitions.push_back(Transition{from, symbol, std::move(g), to});
    }

    Nfma parse_nfma() {
        Nfma n;
        n.name = expect_name("an automaton name");
        std::set<StateId> initial;
        expect("{");
        while (!peek("}")) {
            Token at = cur_;
            std::string section = expect_ident("a section");
            expect(":");
            if (section == "registers") {
                n.registers = expect_int("a register count");
                expect(";");
            } else if (section == "states") {
                parse_states(n.states, initial, n.accepting);
            } else if (section == "init") {
                int reg = expect_int("a register index");
                expect("=");
                n.init_assign[reg] = expect_letter_decl();
                expect(";");
            } else if (section == "trans") {
                Token ft = cur_;
                StateId from = expect_name("a state");
                if (!n.states.count(from))
                    throw ParseError(ft.line, ft.col, "'" + from + "' is not a declared state");
                expect("->");
                Token tt = cur_;
                StateId to = expect_name("a state");
                if (!n.states.count(to))
                    throw ParseError(tt.line, tt.col, "'" + to + "' is not a declared state");
                NfmaLabel label = RegisterRead{0};
                if (peek("read")) {
                    advance();
                    label = RegisterRead{expect_int("a register index")};
                } else if (peek("reassign")) {
                    advance();
                    label = RegisterReassign{expect_int("a register index")};
                } else {
                    throw ParseError(cur_.line, cur_.col, "expected 'read' or 'reassign'");
                }
                expect(";");
                n.transitions.push_back(NfmaTransition{from, label, to});
            } else {
                throw ParseError(at.line, at.col, "unknown section '" + section + "'");
            }
        }
        expect("}");
        if (!cur_.end) throw ParseError(cur_.line, cur_.col, "expected end of input");
        if (initial.size() != 1)
            throw ParseError(1, 1, "an nfma needs exactly one initial state");
        n.initial = *initial.begin();
        return n;
    }

    Fa parse_fa() {
        Fa f;
        f.name = expect_name("an automaton name");
        expect("{");
        while (!peek("}")) {
            Token at = cur_;
            std::string section = expect_ident("a section");
            expect(":");
            if (section == "letters") {
                comma_list([&] { f.letters.insert(expect_letter_decl()); });
            } else if (section == "states") {
                parse_states(f.states, f.initial, f.accepting);
            } else if (section == "trans") {
                Token ft = cur_;
                StateId from = expect_name("a state");
                if (!f.states.count(from))
                    throw ParseError(ft.line, ft.col, "'" + from + "' is not a declared state");
                expect("->");
                Token tt = cur_;
                StateId to = expect_name("a state");
                if (!f.states.count(to))
                    throw ParseError(tt.line, tt.col, "'" + to + "' is not a declared state");
                expect("on");
                Token lt = cur_;
                Letter l{expect_name("a letter")};
                if (!f.letters.count(l))
                    throw ParseError(lt.line, lt.col, "'" + l.name + "' is not a declared letter");
                expect(";");
                f.transitions.push_back(FaTransition{from, l, to});
            } else {
                throw ParseError(at.line, at.col, "unknown section '" + section + "'");
            }
        }
        expect("}");
        if (!cur_.end) throw ParseError(cur_.line, cur_.col, "expected end of input");
        return f;
    }

    Lexer lexer_;
    Token cur_;
    Token prev_;
};

std::string join_names(const std::set<Letter>& ls) {
    std::string out;
    for (const auto& l : ls) {
        if (!out.empty()) out += ", ";
        out += l.name;
    }
    return out;
}

std::string join_names(const std::set<Variable>& vs) {
    std::string out;
    for (const auto& v : vs) {
        if (!out.empty()) out += ", ";
        out += v.name;
    }
    return out;
}

std::string states_decl(const std::set<StateId>& states, const std::set<StateId>& initial,
                        const std::set<StateId>& accepting) {
    std::string out;
    for (const auto& q : states) {
        if (!out.empty()) out += ", ";
        out += q;
        if (initial.count(q)) out += " init";
        if (accepting.count(q)) out += " accept";
    }
    return out;
}

std::string guard_dsl(const Guard& g) {
    std::string out;
    for (const auto& atom : g.atoms) {
        if (!out.empty()) out += " && ";
        out += to_string(atom);
    }
    return out;
}

} // namespace

ParsedAutomaton parse_automaton(const std::string& text) {
    Parser parser(text);
    return parser.parse();
}

std::string print_automaton(const Gva& a) {
    std::ostringstream out;
    out << "gva " << a.name << " {\n";
    if (!a.constants.empty()) out << "  letters: " << join_names(a.constants) << ";\n";
    if (!a.vars.empty()) out << "  vars: " << join_names(a.vars) << ";\n";
    if (!a.states.empty())
        out << "  states: " << states_decl(a.states, a.initial, a.accepting) << ";\n";
    for (const auto& [x, qs] : a.refresh) {
        out << "  refresh: " << x.name << " @ ";
        bool first = true;
        for (const auto& q : qs) {
            if (!first) out << ", ";
            first = false;
            out << q;
        }
        out << ";\n";
    }
    for (const auto& t : a.transitions) {
        out << "  trans: " << t.from << " -> " << t.to << " on "
            << (is_epsilon(t.symbol) ? "eps" : symbol_name(t.symbol));
        if (!t.guard.atoms.empty()) out << " if " << guard_dsl(t.guard);
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string print_automaton(const Nfma& n) {
    std::ostringstream out;
    out << "nfma " << n.name << " {\n";
    out << "  registers: " << n.registers << ";\n";
    std::set<StateId> initial{n.initial};
    if (!n.states.empty())
        out << "  states: " << states_decl(n.states, initial, n.accepting) << ";\n";
    for (const auto& [r, l] : n.init_assign)
        out << "  init: " << r << " = " << l.name << ";\n";
    for (const auto& t : n.transitions) {
        out << "  trans: " << t.from << " -> " << t.to;
        if (const auto* read = std::get_if<RegisterRead>(&t.label))
            out << " read " << read->reg;
        else
            out << " reassign " << std::get<RegisterReassign>(t.label).reg;
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string print_automaton(const Fa& f) {
    std::ostringstream out;
    out << "fa " << f.name << " {\n";
    if (!f.letters.empty()) out << "  letters: " << join_names(f.letters) << ";\n";
    if (!f.states.empty())
        out << "  states: " << states_decl(f.states, f.initial, f.accepting) << ";\n";
    for (const auto& t : f.transitions)
        out << "  trans: " << t.from << " -> " << t.to << " on " << t.letter.name << ";\n";
    out << "}\n";
    return out.str();
}

std::string print_automaton(const ParsedAutomaton& a) {
    return std::visit([](const auto& inner) { return print_automaton(inner); }, a);
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void dot_states(std::ostringstream& out, const std::set<StateId>& states,
                const std::set<StateId>& initial, const std::set<StateId>& accepting,
                const std::map<StateId, std::string>& annotations) {
    for (const auto& q : states) {
        std::string label = dot_escape(q);
        auto it = annotations.find(q);
        if (it != annotations.end()) label += "\\n" + dot_escape(it->second);
        out << "  \"" << dot_escape(q) << "\" [label=\"" << label << "\""
            << (accepting.count(q) ? ", shape=doublecircle" : "") << "];\n";
    }
    std::size_t i = 0;
    for (const auto& q : initial) {
        out << "  \"__start" << i << "\" [shape=point, style=invis];\n";
        out << "  \"__start" << i << "\" -> \"" << dot_escape(q) << "\";\n";
        ++i;
    }
}

} // namespace

std::string export_dot(const Gva& a) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(a.name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    std::map<StateId, std::string> notes;
    for (const auto& q : a.states) {
        auto refreshed = a.refreshed_at(q);
        if (refreshed.empty()) continue;
        std::string note = "refresh: ";
        bool first = true;
        for (const auto& x : refreshed) {
            if (!first) note += ", ";
            first = false;
            note += x.name;
        }
        notes[q] = note;
    }
    dot_states(out, a.states, a.initial, a.accepting, notes);
    for (const auto& t : a.transitions) {
        std::string label = is_epsilon(t.symbol) ? "eps" : symbol_name(t.symbol);
        if (!t.guard.atoms.empty()) label += ", " + guard_dsl(t.guard);
        out << "  \"" << dot_escape(t.from) << "\" -> \"" << dot_escape(t.to) << "\" [label=\""
            << dot_escape(label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const Nfma& n) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(n.name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    std::map<StateId, std::string> notes;
    dot_states(out, n.states, {n.initial}, n.accepting, notes);
    for (const auto& t : n.transitions) {
        std::string label;
        if (const auto* read = std::get_if<RegisterRead>(&t.label))
            label = "read " + std::to_string(read->reg);
        else
            label = "reassign " + std::to_string(std::get<RegisterReassign>(t.label).reg);
        out << "  \"" << dot_escape(t.from) << "\" -> \"" << dot_escape(t.to) << "\" [label=\""
            << dot_escape(label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const Fa& f) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(f.name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    std::map<StateId, std::string> notes;
    dot_states(out, f.states, f.initial, f.accepting, notes);
    for (const auto& t : f.transitions)
        out << "  \"" << dot_escape(t.from) << "\" -> \"" << dot_escape(t.to) << "\" [label=\""
            << dot_escape(t.letter.name) << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const ParsedAutomaton& a) {
    return std::visit([](const auto& inner) { return export_dot(inner); }, a);
}

namespace {

nlohmann::json subst_json(const Substitution& s) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [x, l] : s.bindings) out[x.name] = l.name;
    return out;
}

nlohmann::json symbol_json(const Symbol& s) {
    nlohmann::json out = nlohmann::json::object();
    if (is_epsilon(s)) {
        out["kind"] = "eps";
        out["name"] = "eps";
    } else if (const auto* l = std::get_if<Letter>(&s)) {
        out["kind"] = "letter";
        out["name"] = l->name;
    } else {
        out["kind"] = "var";
        out["name"] = std::get<Variable>(s).name;
    }
    return out;
}

} // namespace

std::string export_strategy_json(const Strategy& s, const Gva& responder) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [pos, move] : s.moves) {
        nlohmann::json entry = nlohmann::json::object();

        nlohmann::json position = nlohmann::json::object();
        position["q1"] = pos.left.state;
        position["sigma1"] = subst_json(pos.left.subst);
        position["q2"] = pos.right.state;
        position["sigma2"] = subst_json(pos.right.subst);
        nlohmann::json challenge = nlohmann::json::object();
        challenge["sigma3"] = subst_json(pos.challenge_subst);
        challenge["alpha"] = symbol_json(pos.challenge_label);
        position["challenge"] = challenge;
        entry["position"] = position;

        nlohmann::json mv = nlohmann::json::object();
        if (move.service_index) mv["service_index"] = *move.service_index;
        const Transition& t = responder.transitions.at(move.transition_index);
        nlohmann::json transition = nlohmann::json::object();
        transition["from"] = t.from;
        transition["symbol"] = symbol_json(t.symbol);
        transition["guard"] = to_string(t.guard);
        transition["to"] = t.to;
        mv["transition"] = transition;
        mv["guess"] = subst_json(move.guess);
        entry["move"] = mv;

        out.push_back(entry);
    }
    return out.dump(2) + "\n";
}

} // namespace gva
