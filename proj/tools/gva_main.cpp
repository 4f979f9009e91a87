#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "gva/closure.hpp"
#include "gva/decisions.hpp"
#include "gva/dsl.hpp"
#include "gva/semantics.hpp"
#include "gva/simulation.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

bool use_color() {
    const char* env = std::getenv("GVA_COLOR");
    if (env && std::string(env) == "0") return false;
    return isatty(2);
}

void report_error(const std::string& message) {
    if (use_color())
        std::cerr << "\033[31merror:\033[0m " << message << "\n";
    else
        std::cerr << "error: " << message << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gva::Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

gva::ParsedAutomaton load(const std::string& path) {
    return gva::parse_automaton(read_file(path));
}

gva::Gva load_gva(const std::string& path) {
    gva::ParsedAutomaton parsed = load(path);
    if (auto* a = std::get_if<gva::Gva>(&parsed)) return std::move(*a);
    if (auto* f = std::get_if<gva::Fa>(&parsed)) return gva::fa_to_gva(*f);
    return gva::nfma_to_gva(std::get<gva::Nfma>(parsed));
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gva::Error("cannot write '" + path + "'");
    out << text;
}

std::string word_to_string(const gva::Word& w) {
    std::string out;
    for (const auto& l : w) {
        if (!out.empty()) out += " ";
        out += l.name;
    }
    return out;
}

gva::Word to_word(const std::vector<std::string>& letters) {
    gva::Word w;
    for (const auto& l : letters) w.push_back(gva::Letter{l});
    return w;
}

void print_trace(const gva::Gva& a, const gva::Trace& trace) {
    for (const auto& wit : trace) {
        const gva::Transition& t = a.transitions.at(wit.transition_index);
        std::cout << "  " << t.from << " -> " << t.to << " on "
                  << (wit.input ? wit.input->name : "eps");
        if (!wit.guess.empty()) std::cout << " guess " << gva::to_string(wit.guess);
        std::cout << " => " << gva::to_string(wit.result.subst) << " at " << wit.result.state
                  << "\n";
    }
}

int run_check(const std::string& path) {
    gva::ParsedAutomaton parsed = load(path);
    gva::Diagnostics diags = std::visit(
        [](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, gva::Gva>) return gva::validate_gva(a);
            else if constexpr (std::is_same_v<T, gva::Nfma>) return gva::validate_nfma(a);
            else return gva::validate_fa(a);
        },
        parsed);
    if (diags.empty()) {
        std::cout << "OK\n";
        return kExitYes;
    }
    for (const auto& d : diags)
        std::cout << d.code << ": " << d.message << " (" << d.where << ")\n";
    return kExitNo;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"guarded variable automata toolkit"};
    app.require_subcommand(1);

    std::string file, file_b, out_path, op_name, strategy_path, pool_csv;
    std::vector<std::string> files, word_args;
    std::size_t max_len = 3;
    std::size_t ln_n = 1;
    bool with_trace = false;

    auto* check = app.add_subcommand("check", "parse and validate an automaton file");
    check->add_option("file", file)->required();

    auto* nonempty = app.add_subcommand("nonempty", "decide nonemptiness, print a witness");
    nonempty->add_option("file", file)->required();
    nonempty->add_flag("--trace", with_trace, "also print the witness run");

    auto* member = app.add_subcommand("member", "decide membership of a word (letters after --)");
    member->add_option("file", file)->required();
    member->add_option("letters", word_args, "word letters");
    member->add_flag("--trace", with_trace, "print the accepting run");

    auto* op = app.add_subcommand("op", "apply union|intersect|concat|star");
    op->add_option("operation", op_name)->required()
        ->check(CLI::IsMember({"union", "intersect", "concat", "star"}));
    op->add_option("inputs", files, "input automata")->required();
    op->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* complement = app.add_subcommand("complement-fa", "complement an FA as a GVA");
    complement->add_option("file", file)->required();
    complement->add_option("-o,--output", out_path);

    auto* product = app.add_subcommand("product", "asynchronous product of GVAs");
    product->add_option("inputs", files)->required()->expected(-1);
    product->add_option("-o,--output", out_path);

    auto* translate = app.add_subcommand("translate-nfma", "translate an NFMA into a GVA");
    translate->add_option("file", file)->required();
    translate->add_option("-o,--output", out_path);

    auto* simulate = app.add_subcommand("simulate", "decide whether A is simulated by B");
    simulate->add_option("a", file)->required();
    simulate->add_option("b", file_b)->required();

    auto* compose = app.add_subcommand("compose", "synthesize a mediator strategy");
    compose->add_option("inputs", files, "client followed by the services")->required()->expected(-1);
    compose->add_option("--strategy", strategy_path, "strategy JSON output (default stdout)");

    auto* genln = app.add_subcommand("gen-ln", "emit the mirrored-blocks benchmark automaton");
    genln->add_option("n", ln_n)->required()->check(CLI::PositiveNumber);
    genln->add_option("-o,--output", out_path);

    auto* dot = app.add_subcommand("dot", "export Graphviz DOT");
    dot->add_option("file", file)->required();
    dot->add_option("-o,--output", out_path);

    auto* enumerate = app.add_subcommand("enumerate", "list accepted words over a finite pool");
    enumerate->add_option("file", file)->required();
    enumerate->add_option("--pool", pool_csv, "comma-separated letters")->required();
    enumerate->add_option("--maxlen", max_len, "maximum word length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }

    try {
        if (*check) return run_check(file);

        if (*nonempty) {
            gva::Gva a = load_gva(file);
            auto witness = gva::nonemptiness(a);
            if (!witness) {
                std::cout << "EMPTY\n";
                return kExitNo;
            }
            std::cout << word_to_string(witness->first) << "\n";
            if (with_trace) print_trace(a, witness->second);
            return kExitYes;
        }

        if (*member) {
            gva::Gva a = load_gva(file);
            auto trace = gva::membership(a, to_word(word_args));
            if (!trace) {
                std::cout << "REJECTED\n";
                return kExitNo;
            }
            std::cout << "ACCEPTED\n";
            if (with_trace) print_trace(a, *trace);
            return kExitYes;
        }

        if (*op) {
            if (op_name == "star") {
                if (files.size() != 1) throw gva::Error("star takes exactly one input");
                write_output(gva::print_automaton(gva::gva_star(load_gva(files[0]))), out_path);
                return kExitYes;
            }
            if (files.size() != 2) throw gva::Error(op_name + " takes exactly two inputs");
            gva::Gva a = load_gva(files[0]);
            gva::Gva b = load_gva(files[1]);
            gva::Gva result = op_name == "union"       ? gva::gva_union(a, b)
                              : op_name == "intersect" ? gva::gva_intersection(a, b)
                                                       : gva::gva_concat(a, b);
            write_output(gva::print_automaton(result), out_path);
            return kExitYes;
        }

        if (*complement) {
            gva::ParsedAutomaton parsed = load(file);
            auto* f = std::get_if<gva::Fa>(&parsed);
            if (!f) throw gva::Error("complement-fa needs an fa file");
            write_output(gva::print_automaton(gva::complement_fa(*f)), out_path);
            return kExitYes;
        }

        if (*product) {
            std::vector<gva::Gva> components;
            for (const auto& path : files) components.push_back(load_gva(path));
            write_output(gva::print_automaton(gva::async_product(components)), out_path);
            return kExitYes;
        }

        if (*translate) {
            gva::ParsedAutomaton parsed = load(file);
            auto* n = std::get_if<gva::Nfma>(&parsed);
            if (!n) throw gva::Error("translate-nfma needs an nfma file");
            write_output(gva::print_automaton(gva::nfma_to_gva(*n)), out_path);
            return kExitYes;
        }

        if (*simulate) {
            gva::Gva a = load_gva(file);
            gva::Gva b = load_gva(file_b);
            for (const auto* side : {&a, &b})
                for (const auto& d : gva::check_sim_preconditions(*side))
                    if (d.code == "NotAllAccepting") {
                        std::cerr << "warning: " << side->name
                                  << " is treated as all-accepting by the simulation game\n";
                        break;
                    }
            if (gva::simulates(a, b)) {
                std::cout << "SIMULATES\n";
                return kExitYes;
            }
            std::cout << "DOES NOT SIMULATE\n";
            return kExitNo;
        }

        if (*compose) {
            if (files.size() < 2) throw gva::Error("compose needs a client and at least one service");
            gva::Gva client = load_gva(files[0]);
            std::vector<gva::Gva> services;
            for (std::size_t i = 1; i < files.size(); ++i) services.push_back(load_gva(files[i]));
            auto result = gva::compose_services(client, services);
            if (!result) {
                std::cerr << "no composition: the community does not simulate the client\n";
                return kExitNo;
            }
            write_output(gva::export_strategy_json(result->strategy, result->community),
                         strategy_path);
            return kExitYes;
        }

        if (*genln) {
            write_output(gva::print_automaton(gva::gen_ln(ln_n)), out_path);
            return kExitYes;
        }

        if (*dot) {
            write_output(gva::export_dot(load(file)), out_path);
            return kExitYes;
        }

        if (*enumerate) {
            gva::Gva a = load_gva(file);
            std::set<gva::Letter> pool;
            std::stringstream split(pool_csv);
            std::string token;
            while (std::getline(split, token, ','))
                if (!token.empty()) pool.insert(gva::Letter{token});
            if (pool.empty()) throw gva::Error("--pool needs at least one letter");
            for (const auto& w : gva::enumerate_language(a, pool, max_len))
                std::cout << word_to_string(w) << "\n";
            return kExitYes;
        }
    } catch (const gva::Error& e) {
        report_error(e.what());
        return kExitError;
    } catch (const std::exception& e) {
        report_error(e.what());
        return kExitError;
    }

    return kExitError;
}
