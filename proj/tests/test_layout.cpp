#include <cstdio>
#include <string>

#include "doctest.h"

#include "qca/errors.hpp"
#include "qca/layout.hpp"
#include "qca/site.hpp"

using namespace qca;

namespace {

ChainLayout sample_layout() {
  ChainLayout layout;
  layout.n_sites = 8;
  layout.qc_lo = 2;
  layout.qc_hi = 4;
  layout.pointer_site = 2;
  layout.program = CommandProgram{"SG", 2};
  layout.qubits = "10";
  return layout;
}

}  // namespace

TEST_SUITE("layout") {

TEST_CASE("program length splits into real part and padding") {
  const CommandProgram p{"SRGLS", 3};
  CHECK(p.l_p() == 5);
  CHECK(p.length() == 8);
  CHECK(CommandProgram{}.length() == 0);
}

TEST_CASE("program_char reads padding slots as L") {
  const ChainLayout layout = sample_layout();
  CHECK(layout.program_char(0) == 'S');
  CHECK(layout.program_char(1) == 'G');
  CHECK(layout.program_char(2) == 'L');
  CHECK(layout.program_char(3) == 'L');
}

TEST_CASE("derived positions") {
  const ChainLayout layout = sample_layout();
  CHECK(layout.window_size() == 2);
  CHECK(layout.program_lo() == 4);
  CHECK(layout.program_hi() == 8);
  CHECK_NOTHROW(layout.validate());
}

TEST_CASE("validation rejects inconsistent fields") {
  auto broken = [](auto mutate) {
    ChainLayout layout = sample_layout();
    mutate(layout);
    return layout;
  };
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.n_sites = 0; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.qc_lo = -1; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.qc_hi = 1; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.pointer_site = 8; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.pointer_site = -1; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.qubits = "1"; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.qubits = "12"; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.program.real = "SX"; }).validate(), LayoutError);
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.program.padding = -1; }).validate(), LayoutError);
  // Program must fit: real 2 + padding 3 starting at site 4 needs 9 sites.
  CHECK_THROWS_AS(broken([](ChainLayout& l) { l.program.padding = 3; }).validate(), LayoutError);
}

TEST_CASE("json roundtrip preserves every field") {
  const ChainLayout layout = sample_layout();
  const nlohmann::json j = layout;
  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("n_sites").get<int>() == 8);
  CHECK(j.at("qc_window")[0].get<int>() == 2);
  CHECK(j.at("qc_window")[1].get<int>() == 4);
  CHECK(j.at("pointer_site").get<int>() == 2);
  CHECK(j.at("program").get<std::string>() == "SG");
  CHECK(j.at("padding").get<int>() == 2);
  CHECK(j.at("qubits").get<std::string>() == "10");

  const ChainLayout back = j.get<ChainLayout>();
  CHECK(back.n_sites == layout.n_sites);
  CHECK(back.qc_lo == layout.qc_lo);
  CHECK(back.qc_hi == layout.qc_hi);
  CHECK(back.pointer_site == layout.pointer_site);
  CHECK(back.program == layout.program);
  CHECK(back.qubits == layout.qubits);
}

TEST_CASE("file roundtrip") {
  const std::string path = "layout_roundtrip_tmp.json";
  const ChainLayout layout = sample_layout();
  save_layout(layout, path);
  const ChainLayout back = load_layout(path);
  CHECK(back.program == layout.program);
  CHECK(back.n_sites == layout.n_sites);
  CHECK(back.qubits == layout.qubits);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_layout("does_not_exist_tmp.json"), LayoutError);
}

TEST_CASE("malformed json is reported as a layout error") {
  const nlohmann::json missing_fields = nlohmann::json::parse(R"({"n_sites":4})");
  CHECK_THROWS_AS(missing_fields.get<ChainLayout>(), LayoutError);
  const nlohmann::json wrong_version = nlohmann::json::parse(
      R"({"schema_version":2,"n_sites":8,"qc_window":[2,4],"pointer_site":2,)"
      R"("program":"SG","padding":2,"qubits":"10"})");
  CHECK_THROWS_AS(wrong_version.get<ChainLayout>(), LayoutError);
}

TEST_CASE("initial state is the described product basis vector") {
  const ChainLayout layout = sample_layout();
  const ChainState state = make_initial_state(layout);
  REQUIRE(state.n_sites == 8);
  REQUIRE(state.amplitudes.size() == 1);
  const auto& [key, amp] = *state.amplitudes.begin();
  CHECK(amp == Complex(1.0, 0.0));
  REQUIRE(key.size() == 8);

  // Sites 0,1: empty registers.
  CHECK(key[0] == encode_site({0, PointerState::Absent, Command::E}));
  CHECK(key[1] == encode_site({0, PointerState::Absent, Command::E}));
  // Window sites: qubits "10", pointer P0 on site 2.
  CHECK(key[2] == encode_site({1, PointerState::P0, Command::E}));
  CHECK(key[3] == encode_site({0, PointerState::Absent, Command::E}));
  // Program sites: S G L L with empty registers.
  CHECK(key[4] == encode_site({0, PointerState::Absent, Command::S}));
  CHECK(key[5] == encode_site({0, PointerState::Absent, Command::G}));
  CHECK(key[6] == encode_site({0, PointerState::Absent, Command::L}));
  CHECK(key[7] == encode_site({0, PointerState::Absent, Command::L}));
}

TEST_CASE("initial state overload replaces qubits and program") {
  const ChainLayout layout = sample_layout();
  const ChainState state = make_initial_state(layout, "01", CommandProgram{"L", 0});
  const auto& key = state.amplitudes.begin()->first;
  CHECK(key[2] == encode_site({0, PointerState::P0, Command::E}));
  CHECK(key[3] == encode_site({1, PointerState::Absent, Command::E}));
  CHECK(key[4] == encode_site({0, PointerState::Absent, Command::L}));
  CHECK(key[5] == encode_site({0, PointerState::Absent, Command::E}));
}

}  // TEST_SUITE
