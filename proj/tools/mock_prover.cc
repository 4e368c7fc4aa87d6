// Copyright 2026 The physk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stand-in external prover for harness tests.
//
//   empty    answers with an empty script
//   replay   answers with <traces>/<id>.script; with --from N only from
//            attempt N on, with --fraction F only on attempts whose hash
//            falls below F
//   crash    exits 3 without answering
//   hang     never answers
//   garbage  prints a line that is not JSON

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mock external prover"};
  std::string mode = "empty";
  std::string traces;
  std::size_t from = 0;
  double fraction = 1.0;
  std::uint64_t seed = 0;
  app.add_option("mode", mode)
      ->check(CLI::IsMember({"empty", "replay", "crash", "hang", "garbage"}));
  app.add_option("--traces", traces, "directory of <id>.script files");
  app.add_option("--from", from, "first attempt index that answers");
  app.add_option("--fraction", fraction, "share of attempts that answer");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  std::string line;
  std::getline(std::cin, line);
  if (mode == "crash") return 3;
  if (mode == "hang") {
    for (;;) std::this_thread::sleep_for(std::chrono::seconds(1));
  }
  if (mode == "garbage") {
    std::cout << "this is not a response\n";
    return 0;
  }
  auto request = nlohmann::json::parse(line);
  std::string id = request.at("id");
  std::size_t k = request.at("k");
  std::string script;
  if (mode == "replay") {
    std::size_t h = std::hash<std::string>{}(id + "#" + std::to_string(k) +
                                             "#" + std::to_string(seed));
    bool answer = k >= from && (h % 10000) < fraction * 10000;
    std::ifstream in(traces + "/" + id + ".script");
    if (answer && in) {
      std::stringstream buf;
      buf << in.rdbuf();
      script = buf.str();
    }
  }
  std::cout << "mock prover thinking...\n";
  nlohmann::ordered_json response;
  response["id"] = id;
  response["script"] = script;
  std::cout << response.dump() << "\n";
  return 0;
}
