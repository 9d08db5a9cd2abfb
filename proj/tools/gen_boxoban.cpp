// Writes a synthetic Boxoban-format corpus: rooms carved by a random walk,
// boxes pulled away from their goals by reverse play.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hackbox/rng.hpp"

namespace {

constexpr int N = 10;
constexpr int kBoxes = 4;

struct P {
    int x, y;
    bool operator==(const P&) const = default;
};

constexpr std::array<P, 4> kSteps{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

struct Level {
    std::array<std::string, N> rows;
    int score = 0;
};

using Grid = std::array<std::array<bool, N>, N>;

Grid carve(hackbox::Rng& rng)
{
    Grid floor{};
    P at{rng.range(1, N - 2), rng.range(1, N - 2)};
    int dir = static_cast<int>(rng.index(4));
    const int walk = rng.range(25, 45);
    for (int i = 0; i < walk; ++i) {
        const int shape = rng.range(0, 3);
        const int w = shape == 1 || shape == 3 ? 2 : 1;
        const int h = shape == 2 || shape == 3 ? 2 : 1;
        for (int dy = 0; dy < h; ++dy)
            for (int dx = 0; dx < w; ++dx) {
                const int x = std::clamp(at.x + dx, 1, N - 2);
                const int y = std::clamp(at.y + dy, 1, N - 2);
                floor[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = true;
            }
        if (rng.percent(35)) dir = static_cast<int>(rng.index(4));
        const P next{at.x + kSteps[static_cast<std::size_t>(dir)].x, at.y + kSteps[static_cast<std::size_t>(dir)].y};
        if (next.x >= 1 && next.x <= N - 2 && next.y >= 1 && next.y <= N - 2) at = next;
        else dir = (dir + 2) % 4;
    }
    return floor;
}

std::optional<Level> generate(hackbox::Rng& rng, int pulls)
{
    const Grid floor = carve(rng);
    std::vector<P> cells;
    for (int y = 0; y < N; ++y)
        for (int x = 0; x < N; ++x)
            if (floor[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]) cells.push_back({x, y});
    if (cells.size() < 20) return std::nullopt;
    rng.shuffle(std::span<P>(cells));
    const std::vector<P> goals(cells.begin(), cells.begin() + kBoxes);
    std::vector<P> boxes = goals;
    P player = cells[kBoxes];

    auto open = [&](P p) {
        return p.x >= 0 && p.y >= 0 && p.x < N && p.y < N && floor[static_cast<std::size_t>(p.y)][static_cast<std::size_t>(p.x)];
    };
    auto box_at = [&](P p) { return std::find(boxes.begin(), boxes.end(), p); };

    int moved = 0;
    for (int i = 0; i < pulls; ++i) {
        const P d = kSteps[rng.index(4)];
        const P to{player.x + d.x, player.y + d.y};
        if (!open(to) || box_at(to) != boxes.end()) continue;
        const P behind{player.x - d.x, player.y - d.y};
        const auto pulled = box_at(behind);
        if (pulled != boxes.end() && rng.percent(60)) {
            *pulled = player;
            ++moved;
        }
        player = to;
    }
    int off_goal = 0;
    for (const P& b : boxes) off_goal += std::find(goals.begin(), goals.end(), b) == goals.end();
    if (off_goal == 0) return std::nullopt;

    Level lv;
    for (int y = 0; y < N; ++y) {
        std::string row;
        for (int x = 0; x < N; ++x) {
            const P p{x, y};
            const bool goal = std::find(goals.begin(), goals.end(), p) != goals.end();
            const bool box = box_at(p) != boxes.end();
            if (!open(p)) row += '#';
            else if (box) row += goal ? '*' : '$';
            else if (p == player) row += goal ? '+' : '@';
            else row += goal ? '.' : ' ';
        }
        lv.rows[static_cast<std::size_t>(y)] = row;
    }
    lv.score = moved * off_goal;
    return lv;
}

void write(const std::filesystem::path& path, const std::vector<Level>& levels)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out << "; " << i << "\n";
        for (const auto& r : levels[i].rows) out << r << "\n";
        out << "\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generate the bundled Boxoban-format corpus"};
    std::string dir = "data/boxoban";
    std::uint64_t seed = 2021;
    int count = 200;
    app.add_option("--out", dir, "output directory");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--count", count, "levels per split")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    hackbox::Rng rng(seed);
    std::vector<Level> unfiltered, medium, hard;
    const auto need = static_cast<std::size_t>(count);
    while (unfiltered.size() < need || medium.size() < need || hard.size() < need) {
        const auto lv = generate(rng, 300);
        if (!lv) continue;
        if (unfiltered.size() < need) unfiltered.push_back(*lv);
        if (lv->score >= 40 && lv->score < 80 && medium.size() < need) medium.push_back(*lv);
        if (lv->score >= 80 && hard.size() < need) hard.push_back(*lv);
    }
    try {
        std::filesystem::create_directories(dir);
        write(std::filesystem::path(dir) / "unfiltered.txt", unfiltered);
        write(std::filesystem::path(dir) / "medium.txt", medium);
        write(std::filesystem::path(dir) / "hard.txt", hard);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    std::cout << "wrote " << count << " levels per split to " << dir << "\n";
    return 0;
}
