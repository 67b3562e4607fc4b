#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "irriplan/grid_map.hpp"
#include "support/oracles.hpp"

using namespace irriplan;

namespace {

GridMap open_map(int w, int h) {
    std::string text;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (x == 0 && y == 0) text += 'S';
            else if (x == w - 1 && y == h - 1) text += 'G';
            else text += '.';
        }
        text += '\n';
    }
    return GridMap::parse(text);
}

}  // namespace

TEST_CASE("parse maps characters to cell classes") {
    const GridMap m = GridMap::parse("S.#\n..c\n.~G\n");
    CHECK(m.width() == 3);
    CHECK(m.height() == 3);
    CHECK(m.start() == Cell{0, 0});
    CHECK(m.goal() == Cell{2, 2});
    CHECK(m.at(Cell{2, 0}) == CellClass::Obstacle);
    CHECK(m.at(Cell{2, 1}) == CellClass::Crop);
    CHECK(m.at(Cell{1, 2}) == CellClass::River);
    CHECK(m.at(Cell{0, 0}) == CellClass::Road);  // S classed Road
    CHECK(m.at(Cell{2, 2}) == CellClass::Road);  // G classed Road
}

TEST_CASE("parse rejects malformed documents with diagnostics") {
    SUBCASE("duplicate start") {
        CHECK_THROWS_WITH_AS(GridMap::parse("SS\n.G\n"),
                             doctest::Contains("duplicate start"), MapError);
    }
    SUBCASE("duplicate goal") {
        CHECK_THROWS_WITH_AS(GridMap::parse("SG\n.G\n"),
                             doctest::Contains("duplicate goal"), MapError);
    }
    SUBCASE("missing start") {
        CHECK_THROWS_WITH_AS(GridMap::parse("..\n.G\n"), doctest::Contains("missing start"),
                             MapError);
    }
    SUBCASE("missing goal") {
        CHECK_THROWS_WITH_AS(GridMap::parse("S.\n..\n"), doctest::Contains("missing goal"),
                             MapError);
    }
    SUBCASE("unknown character names line and column") {
        CHECK_THROWS_WITH_AS(GridMap::parse("S.\n.x\n.G\n"),
                             doctest::Contains("line 2, column 2"), MapError);
    }
    SUBCASE("ragged rows name the offending line") {
        CHECK_THROWS_WITH_AS(GridMap::parse("S..\n..\n..G\n"), doctest::Contains("line 2"),
                             MapError);
    }
    SUBCASE("programmatic start on obstacle") {
        std::vector<CellClass> cells(4, CellClass::Obstacle);
        cells[3] = CellClass::Road;
        CHECK_THROWS_WITH_AS(GridMap(2, 2, cells, Cell{0, 0}, Cell{1, 1}),
                             doctest::Contains("non-traversable"), MapError);
    }
    SUBCASE("degenerate size") { CHECK_THROWS_AS(GridMap::parse("SG\n"), MapError); }
}

TEST_CASE("parse/render round-trips random valid maps") {
    Rng rng(20240811);
    for (int i = 0; i < 100; ++i) {
        const GridMap m = oracles::random_map(rng);
        const std::string text = m.render();
        const GridMap back = GridMap::parse(text);
        CHECK(back.render() == text);
        CHECK(back.start() == m.start());
        CHECK(back.goal() == m.goal());
        CHECK(back.width() == m.width());
        CHECK(back.height() == m.height());
    }
}

TEST_CASE("neighbors enumerates 8-connected traversable steps") {
    SUBCASE("open interior cell has 8 neighbors, 4 axis and 4 diagonal") {
        const GridMap m = open_map(3, 3);
        const auto steps = neighbors(m, Cell{1, 1});
        REQUIRE(steps.size() == 8);
        int axis = 0, diagonal = 0;
        for (const Step& s : steps) {
            if (s.cost == doctest::Approx(1.0)) ++axis;
            if (s.cost == doctest::Approx(std::sqrt(2.0))) ++diagonal;
        }
        CHECK(axis == 4);
        CHECK(diagonal == 4);
    }
    SUBCASE("corner cell clips to 3") {
        const GridMap m = open_map(4, 4);
        CHECK(neighbors(m, Cell{0, 0}).size() == 3);
    }
    SUBCASE("diagonal forbidden when both flanking cells block") {
        // obstacles north and east of the center exclude the NE diagonal
        const GridMap m = GridMap::parse("S#.\n..#\n..G\n");
        const auto steps = neighbors(m, Cell{1, 1});
        for (const Step& s : steps) CHECK(!(s.to == Cell{2, 0}));
    }
    SUBCASE("diagonal allowed past a single blocking flank") {
        const GridMap m = GridMap::parse("S#.\n...\n..G\n");
        const auto steps = neighbors(m, Cell{1, 1});
        CHECK(std::any_of(steps.begin(), steps.end(),
                          [](const Step& s) { return s.to == Cell{2, 0}; }));
    }
    SUBCASE("river blocks movement like an obstacle") {
        const GridMap m = GridMap::parse("S~.\n.~.\n..G\n");
        const auto steps = neighbors(m, Cell{0, 1});
        for (const Step& s : steps) CHECK(m.at(s.to) != CellClass::River);
    }
}

TEST_CASE("neighbors is symmetric with equal costs") {
    Rng rng(77);
    for (int i = 0; i < 40; ++i) {
        const GridMap m = oracles::random_map(rng);
        for (int y = 0; y < m.height(); ++y) {
            for (int x = 0; x < m.width(); ++x) {
                const Cell a{x, y};
                if (!m.traversable_at(a)) continue;
                for (const Step& s : neighbors(m, a)) {
                    const auto back = neighbors(m, s.to);
                    const auto it = std::find_if(back.begin(), back.end(), [&](const Step& t) {
                        return t.to == a;
                    });
                    REQUIRE(it != back.end());
                    CHECK(it->cost == doctest::Approx(s.cost));
                }
            }
        }
    }
}

TEST_CASE("prediction side follows min(ceil(sqrt(n))+1, 5)") {
    CHECK(prediction_side(16) == 5);
    CHECK(prediction_side(9) == 4);
    CHECK(prediction_side(4) == 3);
    CHECK(prediction_side(25) == 5);
    CHECK(prediction_side(100) == 5);
    // non-square maps use n = max(width, height)
    const GridMap wide = open_map(16, 9);
    CHECK(wide.scale() == 16);
}

TEST_CASE("prediction window anchors the candidate on the near edge") {
    const GridMap m = open_map(16, 16);  // side 5

    SUBCASE("axis move extends forward, centered crosswise") {
        const auto w = prediction_window(m, Cell{5, 7}, Cell{6, 7});
        CHECK(w.side == 5);
        CHECK(w.cells.size() == 25);
        for (const Cell& c : w.cells) {
            CHECK(c.x >= 6);
            CHECK(c.x <= 10);
            CHECK(c.y >= 5);
            CHECK(c.y <= 9);
        }
        CHECK(std::count(w.cells.begin(), w.cells.end(), w.anchor) == 1);
    }
    SUBCASE("diagonal move puts the candidate on the near corner") {
        const auto w = prediction_window(m, Cell{5, 5}, Cell{6, 6});
        for (const Cell& c : w.cells) {
            CHECK(c.x >= 6);
            CHECK(c.x <= 10);
            CHECK(c.y >= 6);
            CHECK(c.y <= 10);
        }
        CHECK(w.cells.size() == 25);
    }
    SUBCASE("negative direction extends backward") {
        const auto w = prediction_window(m, Cell{8, 8}, Cell{7, 8});
        for (const Cell& c : w.cells) {
            CHECK(c.x >= 3);
            CHECK(c.x <= 7);
        }
    }
    SUBCASE("window clipped at map corner stays in bounds and nonempty") {
        const auto w = prediction_window(m, Cell{1, 1}, Cell{0, 0});
        CHECK(w.cells.size() < 25);
        CHECK(!w.cells.empty());
        for (const Cell& c : w.cells) CHECK(m.in_bounds(c));
        CHECK(std::count(w.cells.begin(), w.cells.end(), Cell{0, 0}) == 1);
    }
    SUBCASE("even side splits the resting axis forward-biased") {
        const GridMap small = open_map(9, 9);  // side 4
        const auto w = prediction_window(small, Cell{4, 4}, Cell{5, 4});
        for (const Cell& c : w.cells) {
            CHECK(c.x >= 5);
            CHECK(c.x <= 8);
            CHECK(c.y >= 3);
            CHECK(c.y <= 6);
        }
        CHECK(w.cells.size() == 16);
    }
    SUBCASE("from == to rejected") {
        CHECK_THROWS_AS(prediction_window(m, Cell{3, 3}, Cell{3, 3}), MapError);
    }
}

TEST_CASE("prediction window always contains the candidate") {
    Rng rng(123);
    for (int i = 0; i < 40; ++i) {
        const GridMap m = oracles::random_map(rng);
        for (int y = 0; y < m.height(); ++y) {
            for (int x = 0; x < m.width(); ++x) {
                const Cell from{x, y};
                for (const Step& s : neighbors(m, from)) {
                    const auto w = prediction_window(m, from, s.to);
                    CHECK(std::count(w.cells.begin(), w.cells.end(), s.to) == 1);
                    CHECK(!w.cells.empty());
                    CHECK(w.cells.size() <= static_cast<std::size_t>(w.side * w.side));
                    for (const Cell& c : w.cells) CHECK(m.in_bounds(c));
                }
            }
        }
    }
}

TEST_CASE("obstacle stats count blocking cells and components") {
    SUBCASE("no obstacles") {
        const GridMap m = open_map(16, 16);
        const auto w = prediction_window(m, Cell{7, 7}, Cell{8, 7});
        const auto stats = obstacle_stats(m, w);
        CHECK(stats.components == 0);
        CHECK(stats.cells == 0);
    }
    SUBCASE("a 2x3 block is one component of six cells") {
        GridMap m = [] {
            std::string text;
            for (int y = 0; y < 16; ++y) {
                for (int x = 0; x < 16; ++x) {
                    const bool block = x >= 8 && x <= 9 && y >= 6 && y <= 8;
                    if (x == 0 && y == 0) text += 'S';
                    else if (x == 15 && y == 15) text += 'G';
                    else text += block ? '#' : '.';
                }
                text += '\n';
            }
            return GridMap::parse(text);
        }();
        const auto w = prediction_window(m, Cell{7, 7}, Cell{8, 7});  // x 8..12, y 5..9
        const auto stats = obstacle_stats(m, w);
        CHECK(stats.components == 1);
        CHECK(stats.cells == 6);
    }
    SUBCASE("diagonal touch joins a component under 8-connectivity") {
        GridMap m = [] {
            std::string text;
            for (int y = 0; y < 16; ++y) {
                for (int x = 0; x < 16; ++x) {
                    const bool block = (x == 9 && y == 6) || (x == 10 && y == 7);
                    if (x == 0 && y == 0) text += 'S';
                    else if (x == 15 && y == 15) text += 'G';
                    else text += block ? '#' : '.';
                }
                text += '\n';
            }
            return GridMap::parse(text);
        }();
        const auto w = prediction_window(m, Cell{7, 7}, Cell{8, 7});
        const auto stats = obstacle_stats(m, w);
        CHECK(stats.components == 1);
        CHECK(stats.cells == 2);
    }
    SUBCASE("rivers count toward the obstacle statistics") {
        const GridMap m = GridMap::parse("S....\n..~..\n.....\n....G\n.....\n");
        const auto w = prediction_window(m, Cell{0, 1}, Cell{1, 1});
        const auto stats = obstacle_stats(m, w);
        CHECK(stats.cells >= 1);
    }
}

TEST_CASE("obstacle stats agree with the union-find oracle on random maps") {
    Rng rng(4242);
    for (int i = 0; i < 60; ++i) {
        const GridMap m = oracles::random_map(rng);
        for (int y = 0; y < m.height(); ++y) {
            for (int x = 0; x < m.width(); ++x) {
                const Cell from{x, y};
                for (const Step& s : neighbors(m, from)) {
                    const auto w = prediction_window(m, from, s.to);
                    const auto got = obstacle_stats(m, w);
                    const auto want = oracles::window_obstacles(m, w);
                    CHECK(got.components == want.components);
                    CHECK(got.cells == want.cells);
                    CHECK(got.cells >= got.components);
                    CHECK((got.components == 0) == (got.cells == 0));
                }
            }
        }
    }
}
