#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "petrisynth/extract.hpp"
#include "petrisynth/io.hpp"
#include "petrisynth/pcp.hpp"
#include "petrisynth/reduction.hpp"

using namespace petrisynth;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_cap = 3;
constexpr int exit_losing = 10;

struct cli_options {
    run_config cfg;
    std::string out_dir = ".";
    std::vector<std::string> emit{"dot", "json"};
};

void add_common(CLI::App* cmd, cli_options& opt) {
    cmd->add_option("--bound", opt.cfg.bound_k, "per-place token bound k");
    cmd->add_option("--max-states", opt.cfg.max_states, "arena state cap");
    cmd->add_option("--max-bm", opt.cfg.max_bm, "backward-move sequence cap");
    cmd->add_option("--max-markings", opt.cfg.marking_cap, "reachable marking cap");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--emit", opt.emit, "artifact kinds: dot, json")->delimiter(',');
    cmd->add_flag("--verbose-states", opt.cfg.verbose_states, "full backward moves in DOT labels");
}

bool wants(const cli_options& opt, const std::string& kind) {
    return std::find(opt.emit.begin(), opt.emit.end(), kind) != opt.emit.end();
}

std::string out_path(const cli_options& opt, const std::string& file) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / file).string();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_solve(const std::string& game_path, cli_options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    petri_game game = load_game(game_path);
    if (game.winning.kind == winning_kind::bad_places) game = badplaces_to_badmarkings(game);
    reduction red(game, opt.cfg);
    auto ra = build_arena(red, opt.cfg);
    std::cout << "arena: " << ra.states.size() << " states, max_S=" << red.max_s()
              << ", reachable markings=" << red.reachable().size() << "\n";
    auto sol = buchi::solve(ra.arena);
    if (!buchi::verify_certificate(ra.arena, sol)) {
        std::cerr << "internal error: solver certificate rejected\n";
        return 1;
    }
    std::cout << "solved in " << seconds_since(t0) << " s\n";
    if (!sol.win0[0]) {
        auto d = explain(red, ra, sol, 0);
        std::cout << "verdict: losing\n" << d.to_string(red);
        return exit_losing;
    }
    auto fs = extract(red, ra, sol);
    auto rep = run_all_validators(fs, game, opt.cfg.cut_cap);
    report why;
    auto verdict = check_winning_bad_markings(fs, game, why, opt.cfg.cut_cap);
    if (!rep.ok() || verdict != win_verdict::winning) {
        std::cerr << "internal error: extracted strategy failed validation\n"
                  << rep.to_string() << why.to_string();
        return 1;
    }
    std::cout << "verdict: winning (strategy: " << fs.places.size() << " places, " << fs.transitions.size()
              << " transitions)\n";
    if (wants(opt, "json"))
        write_file(out_path(opt, game.name + ".strategy.json"), strategy_to_json(fs, game));
    if (wants(opt, "dot")) write_file(out_path(opt, game.name + ".strategy.dot"), strategy_to_dot(fs, game));
    std::cout << "total " << seconds_since(t0) << " s\n";
    return exit_ok;
}

int cmd_validate(const std::string& game_path, const std::string& strategy_path, cli_options& opt) {
    petri_game game = load_game(game_path);
    if (game.winning.kind == winning_kind::bad_places) game = badplaces_to_badmarkings(game);
    auto fs = strategy_from_json(read_file(strategy_path), game);
    auto rep = run_all_validators(fs, game, opt.cfg.cut_cap);
    report why;
    auto verdict = check_winning_bad_markings(fs, game, why, opt.cfg.cut_cap);
    std::cout << "structure/refusal/determinism/deadlock: " << (rep.ok() ? "ok\n" : rep.to_string());
    std::cout << "winning: " << (verdict == win_verdict::winning ? "yes\n" : "no\n" + why.to_string());
    return rep.ok() && verdict == win_verdict::winning ? exit_ok : exit_losing;
}

int cmd_reduce_dump(const std::string& game_path, cli_options& opt) {
    petri_game game = load_game(game_path);
    if (game.winning.kind == winning_kind::bad_places) game = badplaces_to_badmarkings(game);
    reduction red(game, opt.cfg);
    auto ra = build_arena(red, opt.cfg);
    std::cout << "arena: " << ra.states.size() << " states\n";
    if (wants(opt, "dot"))
        write_file(out_path(opt, game.name + ".arena.dot"), arena_to_dot(red, ra, opt.cfg.verbose_states));
    if (wants(opt, "json"))
        write_file(out_path(opt, game.name + ".arena.json"), arena_state_table_json(red, ra));
    return exit_ok;
}

int cmd_gen_pcp(const std::string& pcp_path, cli_options& opt) {
    auto inst = parse_pcp(read_file(pcp_path));
    auto game = gen_pcp_game(inst);
    auto base = std::filesystem::path(pcp_path).stem().string();
    game.name = base;
    write_file(out_path(opt, base + ".game"), print_game(game));
    std::cout << census(game).to_string();
    return exit_ok;
}

int cmd_to_good_only(const std::string& game_path, cli_options& opt) {
    petri_game game = load_game(game_path);
    auto out = good_bad_to_good(game, opt.cfg);
    write_file(out_path(opt, out.name + ".game"), print_game(out));
    std::cout << census(out).to_string();
    return exit_ok;
}

int cmd_simulate(const std::string& game_path, const std::vector<std::string>& seq, cli_options&) {
    petri_game game = load_game(game_path);
    auto trace = simulate_play(game, seq);
    std::cout << format_trace(game, trace);
    return exit_ok;
}

int cmd_census(const std::string& game_path, cli_options&) {
    petri_game game = load_game(game_path);
    std::cout << census(game).to_string();
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"petrisynth: synthesis for bounded Petri games with one environment player and bad markings"};
    app.require_subcommand(1);
    cli_options opt;

    std::string game_path, strategy_path, pcp_path;
    std::vector<std::string> seq;

    auto* solve = app.add_subcommand("solve", "decide the game and extract a validated strategy");
    solve->add_option("game", game_path)->required();
    add_common(solve, opt);

    auto* validate = app.add_subcommand("validate", "run all strategy validators");
    validate->add_option("game", game_path)->required();
    validate->add_option("strategy", strategy_path)->required();
    add_common(validate, opt);

    auto* dump = app.add_subcommand("reduce-dump", "emit the Buchi arena as DOT and JSON");
    dump->add_option("game", game_path)->required();
    add_common(dump, opt);

    auto* gen = app.add_subcommand("gen-pcp", "generate the PCP good-and-bad-markings game");
    gen->add_option("pcp", pcp_path)->required();
    add_common(gen, opt);

    auto* togood = app.add_subcommand("to-good-only", "translate good-and-bad to good-markings only");
    togood->add_option("game", game_path)->required();
    add_common(togood, opt);

    auto* sim = app.add_subcommand("simulate", "fire a transition sequence and classify the trace");
    sim->add_option("game", game_path)->required();
    sim->add_option("transitions", seq);
    add_common(sim, opt);

    auto* cen = app.add_subcommand("census", "structural counts of a game file");
    cen->add_option("game", game_path)->required();
    add_common(cen, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(game_path, opt);
        if (validate->parsed()) return cmd_validate(game_path, strategy_path, opt);
        if (dump->parsed()) return cmd_reduce_dump(game_path, opt);
        if (gen->parsed()) return cmd_gen_pcp(pcp_path, opt);
        if (togood->parsed()) return cmd_to_good_only(game_path, opt);
        if (sim->parsed()) return cmd_simulate(game_path, seq, opt);
        if (cen->parsed()) return cmd_census(game_path, opt);
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return exit_cap;
    } catch (const class_error& e) {
        std::cerr << "not in the decidable class: " << e.what() << "\n";
        return exit_input;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_input;
    } catch (const not_enabled& e) {
        std::cerr << "not enabled: " << e.what() << "\n";
        return exit_input;
    } catch (const net_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
