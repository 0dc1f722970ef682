#include "petrisynth/buchi.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace petrisynth::buchi {

void arena::finalize() {
    pred.assign(owner.size(), {});
    for (int v = 0; v < num_states(); ++v) {
        std::sort(succ[v].begin(), succ[v].end());
        succ[v].erase(std::unique(succ[v].begin(), succ[v].end()), succ[v].end());
        for (int w : succ[v]) pred[w].push_back(v);
    }
    for (auto& p : pred) {
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }
}

void arena::validate() const {
    if (owner.size() != accepting.size() || owner.size() != succ.size() || owner.size() != pred.size())
        throw arena_invalid("inconsistent arena vectors");
    if (initial < 0 || initial >= num_states()) throw arena_invalid("initial state out of range");
    for (int v = 0; v < num_states(); ++v) {
        if (succ[v].empty()) throw arena_invalid("state " + std::to_string(v) + " has no outgoing edge");
        for (int w : succ[v])
            if (w < 0 || w >= num_states()) throw arena_invalid("edge target out of range");
    }
}

std::pair<std::vector<uint8_t>, std::vector<int>> attractor(const arena& a, player pl,
                                                            const std::vector<uint8_t>& target,
                                                            const std::vector<uint8_t>* alive) {
    int n = a.num_states();
    auto is_alive = [&](int v) { return !alive || (*alive)[v]; };
    std::vector<uint8_t> in(n, 0);
    std::vector<int> rank(n, -1);
    // counts of not-yet-attracted successors for opponent states
    std::vector<int> remaining(n, 0);
    for (int v = 0; v < n; ++v) {
        if (!is_alive(v)) continue;
        int cnt = 0;
        for (int w : a.succ[v])
            if (is_alive(w)) ++cnt;
        remaining[v] = cnt;
    }
    std::deque<int> queue;
    for (int v = 0; v < n; ++v)
        if (is_alive(v) && target[v]) {
            in[v] = 1;
            rank[v] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        for (int v : a.pred[w]) {
            if (!is_alive(v) || in[v]) continue;
            bool attract = false;
            if (a.owner[v] == pl) {
                attract = true;
            } else {
                if (--remaining[v] == 0) attract = true;
            }
            if (attract) {
                in[v] = 1;
                rank[v] = rank[w] + 1;
                queue.push_back(v);
            }
        }
    }
    return {std::move(in), std::move(rank)};
}

solution solve(const arena& a) {
    a.validate();
    int n = a.num_states();
    std::vector<uint8_t> current(n, 1);
    std::vector<uint8_t> attr0;
    std::vector<int> rank0;
    while (true) {
        std::vector<uint8_t> acc_now(n, 0);
        for (int v = 0; v < n; ++v) acc_now[v] = current[v] && a.accepting[v];
        auto [A, rankA] = attractor(a, player0, acc_now, &current);
        std::vector<uint8_t> rest(n, 0);
        bool rest_any = false;
        for (int v = 0; v < n; ++v) {
            rest[v] = current[v] && !A[v];
            rest_any |= rest[v] != 0;
        }
        auto [B, rankB] = attractor(a, player1, rest, &current);
        attr0 = std::move(A);
        rank0 = std::move(rankA);
        if (!rest_any) break;
        bool removed = false;
        for (int v = 0; v < n; ++v)
            if (current[v] && B[v]) {
                current[v] = 0;
                removed = true;
            }
        if (!removed) break;
    }

    solution s;
    s.win0 = current;
    s.rank = std::move(rank0);
    s.strategy0.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!s.win0[v] || a.owner[v] != player0) continue;
        if (a.accepting[v]) {
            // any successor staying in win0; lowest index
            for (int w : a.succ[v])
                if (s.win0[w]) {
                    s.strategy0[v] = w;
                    break;
                }
        } else {
            // rank-decreasing successor toward accepting states
            for (int w : a.succ[v])
                if (s.win0[w] && s.rank[w] >= 0 && s.rank[w] < s.rank[v]) {
                    s.strategy0[v] = w;
                    break;
                }
        }
        if (s.strategy0[v] < 0) throw arena_invalid("no strategy successor found; solver invariant broken");
    }
    return s;
}

bool verify_certificate(const arena& a, const solution& s) {
    int n = a.num_states();
    if (int(s.win0.size()) != n || int(s.strategy0.size()) != n) return false;
    for (int v = 0; v < n; ++v) {
        if (!s.win0[v]) {
            if (s.strategy0[v] != -1) return false;
            continue;
        }
        if (a.owner[v] == player0) {
            int w = s.strategy0[v];
            if (w < 0 || !std::binary_search(a.succ[v].begin(), a.succ[v].end(), w)) return false;
            if (!s.win0[w]) return false;
        } else {
            if (s.strategy0[v] != -1) return false;
            for (int w : a.succ[v])
                if (!s.win0[w]) return false; // Player 1 can escape: not closed
        }
    }
    // no accepting-free cycle in the strategy-restricted win0 subgraph
    std::vector<int> state(n, 0); // 0 unvisited, 1 on stack, 2 done
    std::function<bool(int)> dfs = [&](int v) -> bool {
        state[v] = 1;
        std::vector<int> nexts;
        if (a.owner[v] == player0) nexts.push_back(s.strategy0[v]);
        else nexts = a.succ[v];
        for (int w : nexts) {
            if (!s.win0[w]) return false;
            if (a.accepting[w]) continue; // cycles through accepting states are fine
            if (state[w] == 1) return false;
            if (state[w] == 0 && !dfs(w)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (int v = 0; v < n; ++v) {
        if (!s.win0[v] || a.accepting[v] || state[v] != 0) continue;
        if (!dfs(v)) return false;
    }
    return true;
}

std::string to_text(const arena& a) {
    std::ostringstream os;
    os << "states " << a.num_states() << "\n";
    os << "initial " << a.initial << "\n";
    for (int v = 0; v < a.num_states(); ++v) {
        os << "state " << v << " owner " << int(a.owner[v]) << (a.accepting[v] ? " accepting" : "") << "\n";
        for (int w : a.succ[v]) os << "edge " << v << " " << w << "\n";
    }
    return os.str();
}

arena from_text(const std::string& text) {
    arena a;
    std::istringstream is(text);
    std::string kw;
    int n = -1;
    while (is >> kw) {
        if (kw == "states") {
            is >> n;
            if (n < 0) throw arena_invalid("bad state count");
            a.owner.assign(n, 0);
            a.accepting.assign(n, 0);
            a.succ.assign(n, {});
        } else if (kw == "initial") {
            is >> a.initial;
        } else if (kw == "state") {
            int v, o;
            std::string ownkw;
            is >> v >> ownkw >> o;
            if (ownkw != "owner" || v < 0 || v >= n) throw arena_invalid("bad state line");
            a.owner[v] = uint8_t(o != 0);
            if (is.peek() == ' ') {
                std::string rest;
                std::getline(is, rest);
                if (rest.find("accepting") != std::string::npos) a.accepting[v] = 1;
            }
        } else if (kw == "edge") {
            int v, w;
            is >> v >> w;
            if (v < 0 || v >= n || w < 0 || w >= n) throw arena_invalid("bad edge line");
            a.succ[v].push_back(w);
        } else {
            throw arena_invalid("unknown keyword in arena text: " + kw);
        }
    }
    a.finalize();
    a.validate();
    return a;
}

std::string to_dot(const arena& a, const std::vector<std::string>* labels) {
    std::ostringstream os;
    os << "digraph arena {\n";
    for (int v = 0; v < a.num_states(); ++v) {
        os << "  s" << v << " [shape=box";
        if (a.owner[v] == player0) os << ", style=filled, fillcolor=gray80";
        if (a.accepting[v]) os << ", peripheries=2";
        if (labels && v < int(labels->size())) {
            std::string esc;
            for (char c : (*labels)[v]) {
                if (c == '"' || c == '\\') esc += '\\';
                esc += c;
            }
            os << ", label=\"" << esc << "\"";
        }
        os << "];\n";
    }
    os << "  init [shape=point];\n  init -> s" << a.initial << ";\n";
    for (int v = 0; v < a.num_states(); ++v)
        for (int w : a.succ[v]) os << "  s" << v << " -> s" << w << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace petrisynth::buchi
