#include "petrisynth/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace petrisynth {

namespace {

struct tokenizer {
    std::string src;
    size_t pos = 0;
    std::vector<std::string> toks;

    explicit tokenizer(const std::string& s) : src(s) {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') ++pos;
            } else if (isspace(uint8_t(c))) {
                ++pos;
            } else if (c == '{' || c == '}' || c == ':' || c == ';' || c == ',') {
                toks.push_back(std::string(1, c));
                ++pos;
            } else if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
                toks.push_back("->");
                pos += 2;
            } else {
                size_t start = pos;
                while (pos < src.size()) {
                    char d = src[pos];
                    if (isspace(uint8_t(d)) || d == '#' || d == '{' || d == '}' || d == ':' || d == ';' ||
                        d == ',')
                        break;
                    if (d == '-' && pos + 1 < src.size() && src[pos + 1] == '>') break;
                    ++pos;
                }
                toks.push_back(src.substr(start, pos - start));
            }
        }
    }
};

struct parser {
    std::vector<std::string> toks;
    size_t i = 0;
    std::string name;

    const std::string& peek() const {
        static const std::string eof = "<eof>";
        return i < toks.size() ? toks[i] : eof;
    }
    bool at_end() const { return i >= toks.size(); }
    std::string next() {
        if (at_end()) throw parse_error(name + ": unexpected end of input");
        return toks[i++];
    }
    void expect(const std::string& t) {
        auto got = next();
        if (got != t) throw parse_error(name + ": expected '" + t + "', got '" + got + "'");
    }
    bool accept(const std::string& t) {
        if (!at_end() && toks[i] == t) {
            ++i;
            return true;
        }
        return false;
    }
    int parse_int() {
        auto t = next();
        try {
            size_t used = 0;
            int v = std::stoi(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw parse_error(name + ": expected integer, got '" + t + "'");
        }
    }
    int parse_bound() { // integer or '*' for unbounded
        if (accept("*")) return unbounded;
        return parse_int();
    }
};

bool is_word(const std::string& t) {
    return !t.empty() && t != "{" && t != "}" && t != ":" && t != ";" && t != "," && t != "->";
}

std::vector<std::pair<std::string, int>> parse_place_list(parser& p) {
    // "a, b:2, c" up to a token that is not a word
    std::vector<std::pair<std::string, int>> out;
    while (is_word(p.peek())) {
        std::string place = p.next();
        int count = 1;
        if (p.accept(":")) count = p.parse_int();
        out.push_back({place, count});
        if (!p.accept(",")) break;
    }
    return out;
}

std::vector<std::string> split_plus(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '+') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

marking_pattern parse_pattern(parser& p, const std::map<std::string, int32_t>& place_ids) {
    auto pid = [&](const std::string& n) {
        auto it = place_ids.find(n);
        if (it == place_ids.end()) throw parse_error(p.name + ": pattern references unknown place " + n);
        return it->second;
    };
    marking_pattern pat;
    p.expect("{");
    while (!p.accept("}")) {
        std::string kw = p.next();
        if (kw == "exact") {
            std::string place = p.next();
            int c = p.parse_int();
            pat.exact.push_back({pid(place), c});
        } else if (kw == "range") {
            std::string place = p.next();
            int lo = p.parse_int();
            int hi = p.parse_bound();
            pat.ranges.push_back({pid(place), lo, hi});
        } else if (kw == "sum") {
            std::string places = p.next();
            marking_pattern::sum_constraint sc;
            for (auto& n : split_plus(places)) sc.places.push_back(pid(n));
            std::sort(sc.places.begin(), sc.places.end());
            sc.lo = p.parse_int();
            sc.hi = p.parse_bound();
            pat.sums.push_back(std::move(sc));
        } else if (kw == "others-zero") {
            pat.others_zero = true;
        } else {
            throw parse_error(p.name + ": unknown pattern constraint '" + kw + "'");
        }
        p.accept(";");
    }
    std::sort(pat.exact.begin(), pat.exact.end());
    std::sort(pat.ranges.begin(), pat.ranges.end());
    std::sort(pat.sums.begin(), pat.sums.end());
    return pat;
}

} // namespace

petri_game parse_game(const std::string& text, const std::string& name) {
    parser p{tokenizer(text).toks, 0, name};
    net_builder b;
    std::vector<std::string> system_names, env_names;
    bool saw_places = false, saw_winning = false;
    winning_kind kind = winning_kind::bad_markings;
    // winning patterns get parsed after the net; remember token positions
    struct raw_pattern {
        bool good;
        size_t tok_at;
    };
    std::vector<raw_pattern> raw_patterns;
    std::vector<std::string> raw_bad_places;

    std::vector<std::string> tok_copy = p.toks;

    // first pass: collect the place declarations so later sections can
    // resolve them
    {
        parser scan{tok_copy, 0, name};
        auto skip_block = [&]() {
            scan.expect("{");
            int depth = 1;
            while (depth > 0) {
                std::string t = scan.next();
                if (t == "{") ++depth;
                if (t == "}") --depth;
            }
        };
        while (!scan.at_end()) {
            std::string section = scan.next();
            if (section == "transition") {
                scan.next(); // name
                skip_block();
            } else if (section == "places") {
                saw_places = true;
                scan.expect("{");
                while (!scan.accept("}")) {
                    std::string which = scan.next();
                    scan.expect(":");
                    auto* dst = &system_names;
                    if (which == "env") dst = &env_names;
                    else if (which != "system")
                        throw parse_error(name + ": expected 'system' or 'env', got '" + which + "'");
                    while (is_word(scan.peek()) && scan.peek() != "system" && scan.peek() != "env")
                        dst->push_back(scan.next());
                }
            } else {
                skip_block();
            }
        }
    }
    if (!saw_places) throw parse_error(name + ": missing places section");
    for (auto& n : system_names) b.add_place(n);
    for (auto& n : env_names) b.add_place(n);

    while (!p.at_end()) {
        std::string section = p.next();
        if (section == "places") {
            p.expect("{");
            int depth = 1;
            while (depth > 0) {
                std::string t = p.next();
                if (t == "{") ++depth;
                if (t == "}") --depth;
            }
        } else if (section == "init") {
            p.expect("{");
            while (!p.accept("}")) {
                std::string place = p.next();
                int c = 1;
                if (p.accept(":")) c = p.parse_int();
                b.set_initial(place, c);
                p.accept(",");
            }
        } else if (section == "transition") {
            std::string tname = p.next();
            p.expect("{");
            std::vector<std::pair<std::string, int>> pre, post;
            std::vector<flow_hint> flow;
            while (!p.accept("}")) {
                std::string kw = p.next();
                p.expect(":");
                if (kw == "pre") pre = parse_place_list(p);
                else if (kw == "post") post = parse_place_list(p);
                else if (kw == "flow") {
                    while (is_word(p.peek())) {
                        std::string from = p.next();
                        p.expect("->");
                        std::string to = p.next();
                        flow_hint h;
                        if (from != "new") h.from = from;
                        if (to != "drop") h.to = to;
                        flow.push_back(h);
                        if (!p.accept(",")) break;
                    }
                } else {
                    throw parse_error(name + ": unknown transition field '" + kw + "'");
                }
                p.accept(";");
            }
            b.add_transition(tname, pre, post, std::move(flow));
        } else if (section == "winning") {
            saw_winning = true;
            p.expect("{");
            while (!p.accept("}")) {
                std::string kw = p.next();
                if (kw == "kind") {
                    p.expect(":");
                    std::string k = p.next();
                    if (k == "bad-places") kind = winning_kind::bad_places;
                    else if (k == "bad-markings") kind = winning_kind::bad_markings;
                    else if (k == "good-markings") kind = winning_kind::good_markings;
                    else if (k == "good-and-bad") kind = winning_kind::good_and_bad;
                    else throw parse_error(name + ": unknown winning kind '" + k + "'");
                } else if (kw == "places") {
                    p.expect(":");
                    while (is_word(p.peek()) && p.peek() != "kind" && p.peek() != "pattern" &&
                           p.peek() != "good" && p.peek() != "bad")
                        raw_bad_places.push_back(p.next());
                } else if (kw == "pattern" || kw == "bad" || kw == "good") {
                    raw_patterns.push_back({kw == "good", p.i});
                    // skip the block
                    p.expect("{");
                    int depth = 1;
                    while (depth > 0) {
                        std::string t = p.next();
                        if (t == "{") ++depth;
                        if (t == "}") --depth;
                    }
                } else {
                    throw parse_error(name + ": unknown winning entry '" + kw + "'");
                }
            }
        } else {
            throw parse_error(name + ": unknown section '" + section + "'");
        }
    }
    if (!saw_winning) throw parse_error(name + ": missing winning section");

    petri_game g;
    g.name = name;
    g.net = b.build();
    g.flow_hints = b.flow_hints();
    g.is_system.assign(g.net.num_places(), false);
    for (auto& n : system_names) g.is_system[g.net.place_id(n)] = true;
    g.winning.kind = kind;

    std::map<std::string, int32_t> place_ids;
    for (int32_t i = 0; i < g.net.num_places(); ++i) place_ids[g.net.place_name(i)] = i;

    for (auto& n : raw_bad_places) {
        auto it = place_ids.find(n);
        if (it == place_ids.end()) throw parse_error(name + ": bad place list references unknown place " + n);
        g.winning.bad_places_.push_back(it->second);
    }
    std::sort(g.winning.bad_places_.begin(), g.winning.bad_places_.end());
    g.winning.bad_places_.erase(std::unique(g.winning.bad_places_.begin(), g.winning.bad_places_.end()),
                                g.winning.bad_places_.end());

    for (auto& rawp : raw_patterns) {
        parser pp{tok_copy, rawp.tok_at, name};
        auto pat = parse_pattern(pp, place_ids);
        bool good = rawp.good;
        if (kind == winning_kind::good_markings) good = true;
        if (kind == winning_kind::bad_markings) good = false;
        (good ? g.winning.good : g.winning.bad).push_back(std::move(pat));
    }
    if (kind == winning_kind::bad_places && !g.winning.bad.empty())
        throw parse_error(name + ": bad-places condition does not take patterns");
    if (kind == winning_kind::good_and_bad && (g.winning.good.empty() || g.winning.bad.empty()))
        throw parse_error(name + ": good-and-bad needs both good and bad patterns");
    std::sort(g.winning.bad.begin(), g.winning.bad.end());
    std::sort(g.winning.good.begin(), g.winning.good.end());

    // winning condition must reference declared places only: guaranteed by
    // construction (patterns resolve names against the net).
    return g;
}

petri_game load_game(const std::string& path) {
    auto text = read_file(path);
    auto base = path;
    if (auto slash = base.find_last_of('/'); slash != std::string::npos) base = base.substr(slash + 1);
    if (auto dot = base.find_last_of('.'); dot != std::string::npos) base = base.substr(0, dot);
    return parse_game(text, base);
}

namespace {

std::string bound_str(int32_t b) { return b == unbounded ? "*" : std::to_string(b); }

std::string pattern_str(const petri_game& g, const marking_pattern& pat, const char* label) {
    std::ostringstream os;
    os << "  " << label << " {";
    bool first = true;
    auto sep = [&]() {
        os << (first ? " " : "; ");
        first = false;
    };
    for (auto& [p, c] : pat.exact) {
        sep();
        os << "exact " << g.net.place_name(p) << " " << c;
    }
    for (auto& [p, lo, hi] : pat.ranges) {
        sep();
        os << "range " << g.net.place_name(p) << " " << lo << " " << bound_str(hi);
    }
    for (auto& sc : pat.sums) {
        sep();
        os << "sum ";
        for (size_t i = 0; i < sc.places.size(); ++i) os << (i ? "+" : "") << g.net.place_name(sc.places[i]);
        os << " " << sc.lo << " " << bound_str(sc.hi);
    }
    if (pat.others_zero) {
        sep();
        os << "others-zero";
    }
    os << " }\n";
    return os.str();
}

} // namespace

std::string print_game(const petri_game& g) {
    std::ostringstream os;
    os << "places {\n  system:";
    for (int32_t p = 0; p < g.net.num_places(); ++p)
        if (g.system_place(p)) os << " " << g.net.place_name(p);
    os << "\n  env:";
    for (int32_t p = 0; p < g.net.num_places(); ++p)
        if (g.env_place(p)) os << " " << g.net.place_name(p);
    os << "\n}\n";
    os << "init {";
    for (auto& [p, c] : g.net.initial().entries()) os << " " << g.net.place_name(p) << ":" << c;
    os << " }\n";
    for (int32_t t = 0; t < g.net.num_transitions(); ++t) {
        os << "transition " << g.net.trans_name(t) << " {\n  pre:";
        bool first = true;
        for (auto& [p, c] : g.net.pre(t).entries()) {
            os << (first ? " " : ", ") << g.net.place_name(p);
            if (c != 1) os << ":" << c;
            first = false;
        }
        os << "\n  post:";
        first = true;
        for (auto& [p, c] : g.net.post(t).entries()) {
            os << (first ? " " : ", ") << g.net.place_name(p);
            if (c != 1) os << ":" << c;
            first = false;
        }
        auto it = g.flow_hints.find(g.net.trans_name(t));
        if (it != g.flow_hints.end() && !it->second.empty()) {
            auto hints = it->second;
            std::sort(hints.begin(), hints.end());
            os << "\n  flow:";
            first = true;
            for (auto& h : hints) {
                os << (first ? " " : ", ") << (h.from.empty() ? "new" : h.from) << "->"
                   << (h.to.empty() ? "drop" : h.to);
                first = false;
            }
        }
        os << "\n}\n";
    }
    os << "winning {\n  kind: ";
    switch (g.winning.kind) {
    case winning_kind::bad_places: os << "bad-places"; break;
    case winning_kind::bad_markings: os << "bad-markings"; break;
    case winning_kind::good_markings: os << "good-markings"; break;
    case winning_kind::good_and_bad: os << "good-and-bad"; break;
    }
    os << "\n";
    if (g.winning.kind == winning_kind::bad_places) {
        os << "  places:";
        for (auto p : g.winning.bad_places_) os << " " << g.net.place_name(p);
        os << "\n";
    } else if (g.winning.kind == winning_kind::good_and_bad) {
        std::vector<std::string> lines;
        for (auto& pat : g.winning.good) lines.push_back(pattern_str(g, pat, "good"));
        std::sort(lines.begin(), lines.end());
        for (auto& l : lines) os << l;
        lines.clear();
        for (auto& pat : g.winning.bad) lines.push_back(pattern_str(g, pat, "bad"));
        std::sort(lines.begin(), lines.end());
        for (auto& l : lines) os << l;
    } else {
        std::vector<std::string> lines;
        auto& pats = g.winning.kind == winning_kind::good_markings ? g.winning.good : g.winning.bad;
        for (auto& pat : pats) lines.push_back(pattern_str(g, pat, "pattern"));
        std::sort(lines.begin(), lines.end());
        for (auto& l : lines) os << l;
    }
    os << "}\n";
    return os.str();
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
} // namespace

std::string game_to_dot(const petri_game& g) {
    std::ostringstream os;
    os << "digraph game {\n  rankdir=LR;\n";
    for (int32_t p = 0; p < g.net.num_places(); ++p) {
        os << "  \"" << dot_escape(g.net.place_name(p)) << "\" [shape=circle";
        if (g.system_place(p)) os << ", style=filled, fillcolor=gray80";
        int c = g.net.initial().count(p);
        if (c > 0) os << ", xlabel=\"" << c << "\"";
        os << "];\n";
    }
    for (int32_t t = 0; t < g.net.num_transitions(); ++t) {
        os << "  \"" << dot_escape(g.net.trans_name(t)) << "\" [shape=box];\n";
        for (auto& [p, c] : g.net.pre(t).entries()) {
            os << "  \"" << dot_escape(g.net.place_name(p)) << "\" -> \"" << dot_escape(g.net.trans_name(t))
               << "\"";
            if (c != 1) os << " [label=\"" << c << "\"]";
            os << ";\n";
        }
        for (auto& [p, c] : g.net.post(t).entries()) {
            os << "  \"" << dot_escape(g.net.trans_name(t)) << "\" -> \"" << dot_escape(g.net.place_name(p))
               << "\"";
            if (c != 1) os << " [label=\"" << c << "\"]";
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string strategy_to_json(const finite_strategy& fs, const petri_game& game) {
    nlohmann::ordered_json j;
    j["schema"] = "petrisynth-strategy-v1";
    j["game"] = fs.game_name;
    auto places = nlohmann::ordered_json::array();
    for (auto& p : fs.places) {
        nlohmann::ordered_json jp;
        jp["name"] = p.name;
        jp["label"] = game.net.place_name(p.label);
        jp["initial"] = p.initial;
        places.push_back(jp);
    }
    j["places"] = places;
    auto trans = nlohmann::ordered_json::array();
    for (auto& t : fs.transitions) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["label"] = game.net.trans_name(t.label);
        auto pre = nlohmann::ordered_json::array();
        for (int p : t.pre) pre.push_back(fs.places[p].name);
        jt["pre"] = pre;
        auto post = nlohmann::ordered_json::array();
        auto loops = nlohmann::ordered_json::array();
        for (size_t i = 0; i < t.post.size(); ++i) {
            post.push_back(fs.places[t.post[i]].name);
            if (t.post_loopback[i]) loops.push_back(fs.places[t.post[i]].name);
        }
        jt["post"] = post;
        jt["loopback"] = loops;
        trans.push_back(jt);
    }
    j["transitions"] = trans;
    return j.dump(2) + "\n";
}

finite_strategy strategy_from_json(const std::string& text, const petri_game& game) {
    finite_strategy fs;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("strategy json: ") + e.what());
    }
    if (j.value("schema", "") != "petrisynth-strategy-v1")
        throw parse_error("strategy json: unknown schema");
    fs.game_name = j.value("game", "");
    std::map<std::string, int> place_index;
    for (auto& jp : j.at("places")) {
        finite_strategy::place p;
        p.name = jp.at("name").get<std::string>();
        p.label = game.net.place_id(jp.at("label").get<std::string>());
        p.initial = jp.at("initial").get<bool>();
        if (p.label == petri_net::npos)
            throw parse_error("strategy json: place " + p.name + " labels a place unknown to the game");
        place_index[p.name] = int(fs.places.size());
        fs.places.push_back(p);
    }
    for (auto& jt : j.at("transitions")) {
        finite_strategy::transition t;
        t.name = jt.at("name").get<std::string>();
        t.label = game.net.trans_id(jt.at("label").get<std::string>());
        if (t.label == petri_net::npos)
            throw parse_error("strategy json: transition " + t.name + " labels a transition unknown to the game");
        std::set<std::string> loops;
        for (auto& l : jt.at("loopback")) loops.insert(l.get<std::string>());
        for (auto& pn : jt.at("pre")) t.pre.push_back(place_index.at(pn.get<std::string>()));
        for (auto& pn : jt.at("post")) {
            std::string n = pn.get<std::string>();
            t.post.push_back(place_index.at(n));
            t.post_loopback.push_back(loops.count(n) > 0);
        }
        fs.transitions.push_back(std::move(t));
    }
    return fs;
}

std::string strategy_to_dot(const finite_strategy& fs, const petri_game& game) {
    std::ostringstream os;
    os << "digraph strategy {\n  rankdir=TB;\n";
    for (auto& p : fs.places) {
        os << "  \"" << dot_escape(p.name) << "\" [shape=circle, label=\""
           << dot_escape(game.net.place_name(p.label)) << "\"";
        if (game.system_place(p.label)) os << ", style=filled, fillcolor=gray80";
        if (p.initial) os << ", penwidth=2";
        os << "];\n";
    }
    for (auto& t : fs.transitions) {
        os << "  \"" << dot_escape(t.name) << "\" [shape=box, label=\""
           << dot_escape(game.net.trans_name(t.label)) << "\"];\n";
        for (int p : t.pre)
            os << "  \"" << dot_escape(fs.places[p].name) << "\" -> \"" << dot_escape(t.name) << "\";\n";
        for (size_t i = 0; i < t.post.size(); ++i) {
            os << "  \"" << dot_escape(t.name) << "\" -> \"" << dot_escape(fs.places[t.post[i]].name) << "\"";
            if (t.post_loopback[i]) os << " [style=dashed, color=blue, constraint=false]";
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string format_trace(const petri_game& game, const std::vector<trace_step>& trace) {
    std::ostringstream os;
    for (auto& s : trace) {
        if (s.transition.empty()) os << "init    ";
        else os << "fire " << s.transition << " -> ";
        os << game.net.format_marking(s.reached) << " ";
        switch (s.cls) {
        case marking_class::good: os << "[good]"; break;
        case marking_class::bad: os << "[bad]"; break;
        case marking_class::neutral: os << "[neutral]"; break;
        }
        os << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw net_error("cannot write " + path);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw net_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace petrisynth
