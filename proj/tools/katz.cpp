#include "katz/corpus.hpp"
#include "katz/error.hpp"
#include "katz/io.hpp"
#include "katz/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace katz;

namespace {

enum Exit { kOk = 0, kNoSolution = 1, kNotRigid = 2, kInvalid = 3, kInternal = 4 };

bool g_json = false;

int exit_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::InternalInconsistency:
        case ErrorCode::OracleMismatch:
        case ErrorCode::ReplayMismatch: return kInternal;
        default: return kInvalid;
    }
}

void emit(const json& j, const std::string& text) {
    if (g_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
}

std::string join(const std::vector<Rational>& v) {
    std::string s;
    for (const auto& q : v) s += (s.empty() ? "" : " ") + to_string(q);
    return s.empty() ? "-" : s;
}

// Parses and validates; prints violations and returns nullopt when invalid.
std::optional<NamedDatum> load_valid(const std::string& path) {
    NamedDatum nd = parse_named_datum(read_file(path));
    auto violations = nd.datum.validate();
    if (violations.empty()) return nd;
    json list = json::array();
    std::string text;
    for (const auto& v : violations) {
        list.push_back({{"kind", to_string(v.kind)}, {"point", v.point ? v.point->to_string() : ""}, {"message", v.message}});
        text += "invalid: " + v.message + "\n";
    }
    emit({{"valid", false}, {"violations", list}}, text);
    return std::nullopt;
}

int cmd_validate(const std::string& path) {
    auto nd = load_valid(path);
    if (!nd) return kInvalid;
    emit({{"valid", true}}, "valid\n");
    return kOk;
}

int cmd_invariants(const std::string& path, bool oracle) {
    auto nd = load_valid(path);
    if (!nd) return kInvalid;
    const FormalTypeDatum& d = nd->datum;
    if (oracle) check_with_oracle(d);
    const long rig = d.rigidity_index();
    json points = json::array();
    std::ostringstream text;
    text << "rank " << d.rank() << "\n";
    for (const auto& [x, v] : d.entries()) {
        LocalInvariants inv = v.invariants();
        long delta_end = hom(v, v).delta();
        json slopes = json::array();
        for (const auto& s : inv.slopes) slopes.push_back(to_string(s));
        points.push_back({{"point", x.to_string()},
                          {"irreg", to_string(inv.irreg)},
                          {"slopes", slopes},
                          {"hor", inv.hor},
                          {"delta", inv.delta},
                          {"delta_end", delta_end}});
        text << x.to_string() << ": irreg " << to_string(inv.irreg) << ", slopes " << join(inv.slopes) << ", hor "
             << inv.hor << ", delta " << inv.delta << ", delta(END) " << delta_end << "\n";
    }
    json out = {{"rank", d.rank()}, {"points", points}, {"euler_char", d.euler_char()}, {"chi_end", rig},
                {"rig", rig}, {"class", to_string(d.classify())}};
    text << "chi " << d.euler_char() << "\nchi(END) " << rig << "\nrig " << rig << " (" << to_string(d.classify())
         << ")\n";
    if (rig <= 2) {
        out["moduli_dimension"] = d.moduli_dimension();
        text << "moduli dimension " << d.moduli_dimension() << "\n";
    }
    if (oracle) {
        out["oracle"] = "agree";
        text << "oracle: agree\n";
    }
    emit(out, text.str());
    return kOk;
}

int cmd_reduce(const std::string& path, const std::string& trace_out) {
    auto nd = load_valid(path);
    if (!nd) return kInvalid;
    Verdict v = solve_ds(nd->datum);
    std::string text = certificate(v);
    if (v.kind == Verdict::Kind::NoSolution) text += "reason " + to_string(v.reason) + "\n";
    if (v.kind == Verdict::Kind::NotRigid) text += "moduli dimension " + std::to_string(2 - v.rig) + "\n";
    if (v.kind == Verdict::Kind::Solvable && !trace_out.empty()) write_file(trace_out, print_trace(v.trace));
    emit(verdict_to_json(v), text);
    switch (v.kind) {
        case Verdict::Kind::Solvable: return kOk;
        case Verdict::Kind::NoSolution: return kNoSolution;
        case Verdict::Kind::NotRigid: return kNotRigid;
    }
    return kInternal;
}

int print_result(const TransformResult& r, const std::string& out_path) {
    if (const auto* d = std::get_if<FormalTypeDatum>(&r)) {
        std::string text = print_datum(*d);
        if (out_path.empty())
            std::cout << text;
        else
            write_file(out_path, text);
        return kOk;
    }
    if (std::holds_alternative<Skyscraper>(r)) {
        emit({{"result", "skyscraper"}}, "result is a skyscraper (excluded)\n");
        return kNoSolution;
    }
    const auto& u = std::get<Undefined>(r);
    emit({{"result", "undefined"}, {"detail", u.to_string()}}, "undefined: " + u.to_string() + "\n");
    return kNoSolution;
}

int cmd_apply(const std::string& path, const std::string& op_text, const std::string& out_path) {
    auto nd = load_valid(path);
    if (!nd) return kInvalid;
    Operation op = parse_operation(op_text);
    return print_result(apply_operation(nd->datum, op), out_path);
}

int cmd_replay(const std::string& path, bool backward, const std::string& out_path) {
    OperationTrace t = parse_trace(read_file(path));
    FormalTypeDatum d = replay(t, backward ? ReplayDirection::Backward : ReplayDirection::Forward);
    return print_result(d, out_path);
}

int cmd_corpus_list() {
    json list = json::array();
    std::string text;
    for (const auto& name : corpus_names()) {
        CorpusEntry e = corpus_entry(name);
        list.push_back({{"name", name}, {"summary", e.summary}, {"rig", e.rig}, {"verdict", to_string(e.verdict)}});
        text += name + "  " + e.summary + "\n";
    }
    emit(list, text);
    return kOk;
}

int cmd_corpus_emit(const std::string& name, const std::string& lambda, const std::string& out_path) {
    std::optional<Rational> l;
    if (!lambda.empty()) l = parse_rational(lambda);
    CorpusEntry e = corpus_entry(name, l);
    std::string text = print_datum(e.datum, name);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"katz: formal type data of connections on P^1"};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "machine-readable output");

    std::string file, trace_out, op_text, out_path, name, lambda;
    bool oracle = false, backward = false;

    auto* validate = app.add_subcommand("validate", "check a datum file");
    validate->add_option("file", file)->required();

    auto* invariants = app.add_subcommand("invariants", "local and global invariants");
    invariants->add_option("file", file)->required();
    invariants->add_flag("--oracle", oracle, "cross-check with the brute-force oracle");

    auto* reduce = app.add_subcommand("reduce", "run the reduction algorithm");
    reduce->add_option("file", file)->required();
    reduce->add_option("--trace", trace_out, "write the operation trace here");

    auto* apply = app.add_subcommand("apply", "apply one operation");
    apply->add_option("file", file)->required();
    apply->add_option("--op", op_text, "operation descriptor (JSON)")->required();
    apply->add_option("-o,--out", out_path);

    auto* replay_cmd = app.add_subcommand("replay", "replay an operation trace");
    replay_cmd->add_option("trace", file)->required();
    replay_cmd->add_flag("--backward", backward, "reconstruct the initial datum");
    replay_cmd->add_option("-o,--out", out_path);

    auto* corpus = app.add_subcommand("corpus", "built-in examples");
    corpus->require_subcommand(1);
    auto* list = corpus->add_subcommand("list");
    auto* emit_cmd = corpus->add_subcommand("emit");
    emit_cmd->add_option("name", name)->required();
    emit_cmd->add_option("--lambda", lambda, "Kummer parameter");
    emit_cmd->add_option("-o,--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*invariants) return cmd_invariants(file, oracle);
        if (*reduce) return cmd_reduce(file, trace_out);
        if (*apply) return cmd_apply(file, op_text, out_path);
        if (*replay_cmd) return cmd_replay(file, backward, out_path);
        if (*list) return cmd_corpus_list();
        if (*emit_cmd) return cmd_corpus_emit(name, lambda, out_path);
    } catch (const Error& e) {
        if (g_json)
            std::cout << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
