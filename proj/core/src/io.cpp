#include "katz/io.hpp"

#include "katz/error.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace katz {

namespace {

struct Location {
    long line = 1;
    long column = 1;
};

Location location_of(const std::string& text, std::size_t offset) {
    Location loc;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

/// Line/column of every key and string value, addressed by JSON pointer.
/// String tokens are found by a quote scan; the SAX pass below visits them
/// in the same order and supplies the paths.
class SourceMap : public nlohmann::json_sax<json> {
  public:
    explicit SourceMap(const std::string& text) {
        Location loc;
        bool in_string = false, escaped = false;
        for (char c : text) {
            if (in_string) {
                if (escaped)
                    escaped = false;
                else if (c == '\\')
                    escaped = true;
                else if (c == '"')
                    in_string = false;
            } else if (c == '"') {
                in_string = true;
                tokens_.push_back(loc);
            }
            if (c == '\n') {
                ++loc.line;
                loc.column = 1;
            } else {
                ++loc.column;
            }
        }
        json::sax_parse(text, this);
    }

    std::string describe(const std::string& path) const {
        std::string p = path;
        while (true) {
            auto it = positions_.find(p);
            if (it != positions_.end())
                return "line " + std::to_string(it->second.line) + ", column " + std::to_string(it->second.column);
            if (p.empty()) return "line 1, column 1";
            p = p.substr(0, p.rfind('/'));
        }
    }

    bool null() override { return advance(); }
    bool boolean(bool) override { return advance(); }
    bool number_integer(number_integer_t) override { return advance(); }
    bool number_unsigned(number_unsigned_t) override { return advance(); }
    bool number_float(number_float_t, const string_t&) override { return advance(); }
    bool binary(binary_t&) override { return advance(); }
    bool string(string_t&) override {
        record();
        return advance();
    }
    bool start_object(std::size_t) override {
        frames_.push_back({false, 0, ""});
        return true;
    }
    bool key(string_t& k) override {
        frames_.back().key = k;
        record();
        return true;
    }
    bool end_object() override {
        frames_.pop_back();
        return advance();
    }
    bool start_array(std::size_t) override {
        frames_.push_back({true, 0, ""});
        return true;
    }
    bool end_array() override {
        frames_.pop_back();
        return advance();
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

  private:
    struct Frame {
        bool array;
        long index;
        std::string key;
    };

    std::string path() const {
        std::string p;
        for (const auto& f : frames_) p += "/" + (f.array ? std::to_string(f.index) : f.key);
        return p;
    }
    void record() {
        if (next_ < tokens_.size()) positions_[path()] = tokens_[next_];
        ++next_;
    }
    bool advance() {
        if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
        return true;
    }

    std::vector<Location> tokens_;
    std::size_t next_ = 0;
    std::vector<Frame> frames_;
    std::map<std::string, Location> positions_;
};

/// Walks a parsed document, raising ParseError at the right place.
class Reader {
  public:
    Reader(const std::string& text, const SourceMap& map) : text_(text), map_(map) {}

    [[noreturn]] void bad(const std::string& path, const std::string& message) const {
        fail(ErrorCode::ParseError, message + " at " + (path.empty() ? "/" : path) + " (" + map_.describe(path) + ")");
    }

    const json& member(const json& obj, const std::string& path, const std::string& key) const {
        if (!obj.is_object()) bad(path, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) bad(path, "missing field '" + key + "'");
        return *it;
    }

    long integer(const json& v, const std::string& path, long min) const {
        if (!v.is_number_integer()) bad(path, "expected an integer");
        long x = v.get<long>();
        if (x < min) bad(path, "expected an integer >= " + std::to_string(min));
        return x;
    }

    long integer_or(const json& obj, const std::string& path, const std::string& key, long fallback, long min) const {
        auto it = obj.find(key);
        if (it == obj.end()) return fallback;
        return integer(*it, path + "/" + key, min);
    }

    Rational fraction(const json& v, const std::string& path) const {
        if (!v.is_string()) bad(path, "expected a fraction string");
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            bad(path, "malformed fraction \"" + v.get<std::string>() + "\"");
        }
    }

    Scalar scalar(const json& v, const std::string& path, unsigned long conductor) const {
        if (v.is_string()) return Scalar(fraction(v, path));
        const json& num = member(v, path, "num");
        if (!num.is_array()) bad(path + "/num", "expected an array");
        if (num.size() != euler_phi(conductor))
            bad(path + "/num", "expected " + std::to_string(euler_phi(conductor)) + " coordinates for conductor " +
                                   std::to_string(conductor));
        std::vector<Rational> coords;
        for (std::size_t i = 0; i < num.size(); ++i) coords.push_back(fraction(num[i], path + "/num/" + std::to_string(i)));
        return Scalar::from_coords(conductor, std::move(coords));
    }

    /// Standalone scalar: fraction string or {"conductor": N, "num": [...]}.
    Scalar standalone_scalar(const json& v, const std::string& path) const {
        if (v.is_string()) return Scalar(fraction(v, path));
        auto n = static_cast<unsigned long>(integer(member(v, path, "conductor"), path + "/conductor", 1));
        check_conductor(n, path + "/conductor");
        return scalar(v, path, n);
    }

    void check_conductor(unsigned long n, const std::string& path) const {
        if (n > max_conductor())
            bad(path, "conductor " + std::to_string(n) + " exceeds the cap " + std::to_string(max_conductor()));
    }

    std::vector<Block> blocks(const json& v, const std::string& path, unsigned long conductor) const {
        const std::string ram_path = path + "/ram";
        auto ram = static_cast<unsigned long>(integer(member(v, path, "ram"), ram_path, 1));
        PuiseuxTerms terms;
        const json& phase = member(v, path, "phase");
        if (!phase.is_array()) bad(path + "/phase", "expected an array of terms");
        for (std::size_t i = 0; i < phase.size(); ++i) {
            const std::string tp = path + "/phase/" + std::to_string(i);
            Rational e = fraction(member(phase[i], tp, "exp"), tp + "/exp");
            if (e >= 0) bad(tp + "/exp", "phase exponents must be negative");
            if (ram % e.get_den().get_ui() != 0) bad(tp + "/exp", "exponent denominator does not divide ram");
            if (terms.contains(e)) bad(tp + "/exp", "repeated exponent");
            terms.emplace(e, scalar(member(phase[i], tp, "coeff"), tp + "/coeff", conductor));
        }
        Scalar residue = scalar(member(v, path, "residue"), path + "/residue", conductor);
        auto u = static_cast<unsigned long>(integer_or(v, path, "unipotent", 1, 1));
        auto m = static_cast<unsigned long>(integer_or(v, path, "mult", 1, 1));
        // A non-primitive presentation is the induction of a smaller block.
        return induced_blocks(ram, PhasePart(std::move(terms)), residue, u, m);
    }

    FormalTypeDatum datum(const json& doc, const std::string& path) const {
        if (!doc.is_object()) bad(path, "expected an object");
        if (auto it = doc.find("schema_version"); it != doc.end())
            if (integer(*it, path + "/schema_version", 0) != kSchemaVersion)
                bad(path + "/schema_version", "unsupported schema version");
        auto conductor = static_cast<unsigned long>(integer(member(doc, path, "conductor"), path + "/conductor", 1));
        check_conductor(conductor, path + "/conductor");
        long rank = integer(member(doc, path, "rank"), path + "/rank", 1);
        const json& points = member(doc, path, "points");
        if (!points.is_array()) bad(path + "/points", "expected an array");
        FormalTypeDatum::Entries entries;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const std::string pp = path + "/points/" + std::to_string(i);
            const json& pt = member(points[i], pp, "point");
            if (!pt.is_string()) bad(pp + "/point", "expected \"inf\" or a fraction string");
            PointP1 x;
            try {
                x = PointP1::parse(pt.get<std::string>());
            } catch (const Error&) {
                bad(pp + "/point", "malformed point \"" + pt.get<std::string>() + "\"");
            }
            if (entries.contains(x)) bad(pp + "/point", "point " + x.to_string() + " listed twice");
            const json& type = member(points[i], pp, "type");
            const json& bl = member(type, pp + "/type", "blocks");
            if (!bl.is_array()) bad(pp + "/type/blocks", "expected an array");
            std::vector<Block> all;
            for (std::size_t j = 0; j < bl.size(); ++j) {
                const std::string bp = pp + "/type/blocks/" + std::to_string(j);
                try {
                    auto b = blocks(bl[j], bp, conductor);
                    all.insert(all.end(), b.begin(), b.end());
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::ParseError) throw;
                    bad(bp, e.what());
                }
            }
            entries.emplace(x, FormalType(std::move(all)));
        }
        return FormalTypeDatum(rank, std::move(entries));
    }

    Component component(const json& v, const std::string& path) const {
        auto n = static_cast<unsigned long>(integer(member(v, path, "conductor"), path + "/conductor", 1));
        check_conductor(n, path + "/conductor");
        auto bl = blocks(member(v, path, "block"), path + "/block", n);
        if (bl.size() != 1 || bl.front().unipotent != 1 || bl.front().mult != 1)
            bad(path + "/block", "a component is a single primitive block");
        return Component{bl.front().ram, bl.front().phase, bl.front().residue};
    }

    MoebiusMap moebius(const json& v, const std::string& path) const {
        if (!v.is_array() || v.size() != 4) bad(path, "expected [a, b, c, d]");
        Rational m[4];
        for (int i = 0; i < 4; ++i) m[i] = fraction(v[i], path + "/" + std::to_string(i));
        if (m[0] * m[3] - m[1] * m[2] == 0) bad(path, "degenerate Moebius matrix");
        return MoebiusMap::make(m[0], m[1], m[2], m[3]);
    }

    Operation operation(const json& v, const std::string& path) const {
        const json& op = member(v, path, "op");
        if (!op.is_string()) bad(path + "/op", "expected a string");
        const std::string name = op.get<std::string>();
        json empty = json::object();
        const json& params = v.contains("params") ? v.at("params") : empty;
        const std::string pp = path + "/params";
        Operation out;
        if (name == "twist") {
            out.kind = Operation::Kind::Twist;
            out.ell = datum(member(params, pp, "ell"), pp + "/ell");
            if (out.ell.rank() != 1) bad(pp + "/ell", "twist needs a rank-one datum");
        } else if (name == "moebius") {
            out.kind = Operation::Kind::Moebius;
            out.phi = moebius(member(params, pp, "matrix"), pp + "/matrix");
        } else if (name == "fourier") {
            out.kind = Operation::Kind::Fourier;
        } else if (name == "mc") {
            out.kind = Operation::Kind::MiddleConvolution;
            out.lambda = standalone_scalar(member(params, pp, "lambda"), pp + "/lambda");
        } else {
            bad(path + "/op", "unknown operation \"" + name + "\"");
        }
        return out;
    }

  private:
    const std::string& text_;
    const SourceMap& map_;
};

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        Location loc = location_of(text, e.byte > 0 ? e.byte - 1 : 0);
        fail(ErrorCode::ParseError, "malformed JSON at line " + std::to_string(loc.line) + ", column " +
                                        std::to_string(loc.column));
    }
}

json fraction_json(const Rational& q) { return to_string(q); }

json moebius_json(const MoebiusMap& m) {
    return json::array({fraction_json(m.a), fraction_json(m.b), fraction_json(m.c), fraction_json(m.d)});
}

json block_to_json(const Block& b, unsigned long conductor) {
    json phase = json::array();
    for (const auto& [e, c] : b.phase.terms())
        phase.push_back({{"exp", fraction_json(e)}, {"coeff", scalar_to_json(c, conductor)}});
    return {{"ram", b.ram},
            {"phase", phase},
            {"residue", scalar_to_json(b.residue, conductor)},
            {"unipotent", b.unipotent},
            {"mult", b.mult}};
}

json standalone_scalar_json(const Scalar& s) {
    if (s.is_rational()) return fraction_json(s.constant());
    Scalar m = s.minimal();
    json out = scalar_to_json(m, m.conductor());
    out["conductor"] = m.conductor();
    return out;
}

json component_to_json(const Component& c) {
    unsigned long n = c.residue.minimal().conductor();
    for (const auto& [e, v] : c.phase.terms()) n = std::lcm(n, v.minimal().conductor());
    return {{"conductor", n}, {"block", block_to_json(c.block(), n)}};
}

const char* op_name(Operation::Kind k) {
    switch (k) {
        case Operation::Kind::Twist: return "twist";
        case Operation::Kind::Moebius: return "moebius";
        case Operation::Kind::Fourier: return "fourier";
        case Operation::Kind::MiddleConvolution: return "mc";
    }
    return "unknown";
}

}  // namespace

json scalar_to_json(const Scalar& s, unsigned long conductor) {
    json num = json::array();
    const Scalar e = s.embed(conductor);
    for (const auto& q : e.coords()) num.push_back(fraction_json(q));
    return {{"num", num}};
}

json datum_to_json(const FormalTypeDatum& d, const std::optional<std::string>& name) {
    const unsigned long n = d.conductor();
    json points = json::array();
    for (const auto& [x, v] : d.entries()) {
        json blocks = json::array();
        for (const auto& b : v.blocks()) blocks.push_back(block_to_json(b, n));
        points.push_back({{"point", x.to_string()}, {"type", {{"blocks", blocks}}}});
    }
    json out = {{"schema_version", kSchemaVersion}, {"conductor", n}, {"rank", d.rank()}, {"points", points}};
    if (name) out["name"] = *name;
    return out;
}

std::string print_datum(const FormalTypeDatum& d, const std::optional<std::string>& name) {
    return datum_to_json(d, name).dump(2) + "\n";
}

NamedDatum parse_named_datum(const std::string& text) {
    json doc = parse_json(text);
    SourceMap map(text);
    Reader reader(text, map);
    NamedDatum out{reader.datum(doc, ""), std::nullopt};
    if (auto it = doc.find("name"); it != doc.end() && it->is_string()) out.name = it->get<std::string>();
    return out;
}

FormalTypeDatum parse_datum(const std::string& text) { return parse_named_datum(text).datum; }

json operation_to_json(const Operation& op) {
    json params = json::object();
    switch (op.kind) {
        case Operation::Kind::Twist: params["ell"] = datum_to_json(op.ell); break;
        case Operation::Kind::Moebius: params["matrix"] = moebius_json(op.phi); break;
        case Operation::Kind::Fourier: break;
        case Operation::Kind::MiddleConvolution: params["lambda"] = standalone_scalar_json(op.lambda); break;
    }
    return {{"op", op_name(op.kind)}, {"params", params}};
}

Operation parse_operation(const std::string& text) {
    json doc = parse_json(text);
    SourceMap map(text);
    return Reader(text, map).operation(doc, "");
}

TransformResult apply_operation(const FormalTypeDatum& d, const Operation& op) {
    switch (op.kind) {
        case Operation::Kind::Twist: return twist(d, op.ell).normalized();
        case Operation::Kind::Moebius: return moebius(d, op.phi).normalized();
        case Operation::Kind::Fourier: return fourier(d);
        case Operation::Kind::MiddleConvolution: return middle_convolution(d, op.lambda);
    }
    fail(ErrorCode::InternalInconsistency, "unknown operation kind");
}

std::vector<Operation> step_operations(const ReductionStep& step) {
    Operation tw;
    tw.kind = Operation::Kind::Twist;
    tw.ell = dual(step.ell);
    if (step.kind == ReductionStep::Kind::TwistMC) {
        Operation mc;
        mc.kind = Operation::Kind::MiddleConvolution;
        mc.lambda = step.lambda;
        return {tw, mc};
    }
    Operation mo;
    mo.kind = Operation::Kind::Moebius;
    mo.phi = step.phi;
    Operation ft;
    ft.kind = Operation::Kind::Fourier;
    return {mo, tw, ft};
}

json trace_to_json(const OperationTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json ops = json::array();
        for (const auto& op : step_operations(s)) ops.push_back(operation_to_json(op));
        json choices = json::array();
        for (const auto& [x, c] : s.choices)
            choices.push_back({{"point", x.to_string()}, {"component", component_to_json(c)}});
        steps.push_back({{"kind", to_string(s.kind)},
                         {"operations", ops},
                         {"choices", choices},
                         {"rank_before", s.rank_before},
                         {"rank_after", s.rank_after},
                         {"rig_after", s.rig_after}});
    }
    return {{"schema_version", kSchemaVersion},
            {"initial", datum_to_json(trace.initial)},
            {"steps", steps},
            {"terminal", datum_to_json(trace.terminal)}};
}

std::string print_trace(const OperationTrace& trace) { return trace_to_json(trace).dump(2) + "\n"; }

OperationTrace parse_trace(const std::string& text) {
    json doc = parse_json(text);
    SourceMap map(text);
    Reader r(text, map);
    OperationTrace out;
    if (!doc.is_object()) r.bad("", "expected an object");
    out.initial = r.datum(r.member(doc, "", "initial"), "/initial");
    out.terminal = r.datum(r.member(doc, "", "terminal"), "/terminal");
    const json& steps = r.member(doc, "", "steps");
    if (!steps.is_array()) r.bad("/steps", "expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string sp = "/steps/" + std::to_string(i);
        const json& st = steps[i];
        ReductionStep step;
        const json& kind = r.member(st, sp, "kind");
        if (kind == to_string(ReductionStep::Kind::TwistMC))
            step.kind = ReductionStep::Kind::TwistMC;
        else if (kind == to_string(ReductionStep::Kind::TwistMoebiusFT))
            step.kind = ReductionStep::Kind::TwistMoebiusFT;
        else
            r.bad(sp + "/kind", "unknown step kind");
        const json& ops = r.member(st, sp, "operations");
        if (!ops.is_array()) r.bad(sp + "/operations", "expected an array");
        std::vector<Operation> parsed;
        for (std::size_t j = 0; j < ops.size(); ++j)
            parsed.push_back(r.operation(ops[j], sp + "/operations/" + std::to_string(j)));
        auto expect = [&](std::size_t j, Operation::Kind k) {
            if (j >= parsed.size() || parsed[j].kind != k)
                r.bad(sp + "/operations", "operation sequence does not match step kind");
        };
        if (step.kind == ReductionStep::Kind::TwistMC) {
            expect(0, Operation::Kind::Twist);
            expect(1, Operation::Kind::MiddleConvolution);
            step.ell = dual(parsed[0].ell);
            step.lambda = parsed[1].lambda;
        } else {
            expect(0, Operation::Kind::Moebius);
            expect(1, Operation::Kind::Twist);
            expect(2, Operation::Kind::Fourier);
            step.phi = parsed[0].phi;
            step.ell = dual(parsed[1].ell);
        }
        step.rank_before = r.integer(r.member(st, sp, "rank_before"), sp + "/rank_before", 1);
        step.rank_after = r.integer(r.member(st, sp, "rank_after"), sp + "/rank_after", 1);
        step.rig_after = r.integer(r.member(st, sp, "rig_after"), sp + "/rig_after", -1000000);
        if (auto it = st.find("choices"); it != st.end() && it->is_array()) {
            for (std::size_t j = 0; j < it->size(); ++j) {
                const std::string cp = sp + "/choices/" + std::to_string(j);
                const json& c = (*it)[j];
                PointP1 x = PointP1::parse(r.member(c, cp, "point").get<std::string>());
                step.choices.emplace(x, r.component(r.member(c, cp, "component"), cp + "/component"));
            }
        }
        out.steps.push_back(std::move(step));
    }
    return out;
}

json verdict_to_json(const Verdict& v) {
    json out = {{"verdict", to_string(v.kind)}, {"rig", v.rig}};
    if (v.kind == Verdict::Kind::NoSolution) {
        out["reason"] = to_string(v.reason);
        out["detail"] = v.detail;
    }
    if (v.kind == Verdict::Kind::NotRigid) out["moduli_dimension"] = 2 - v.rig;
    if (v.kind == Verdict::Kind::Solvable) {
        json ranks = json::array({v.trace.initial.rank()});
        for (const auto& s : v.trace.steps) ranks.push_back(s.rank_after);
        out["ranks"] = ranks;
        out["steps"] = v.trace.steps.size();
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace katz
