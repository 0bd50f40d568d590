// Test double for an external classifier speaking the JSONL protocol.
//
//   stub_adapter <mode> [state-file]
//
// Modes: hash, keyword, constant, two-class, dead, die-once, bad-norm,
// negative, wrong-count, wrong-id, malformed, error, slow, hang-handshake,
// bad-version, fuzz. With a state file every request id is appended to
// <state-file>.log.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <json.hpp>

#include "stub_protocol.hpp"

using nlohmann::json;

namespace {

void send(const json& j) {
  std::cout << j.dump() << "\n" << std::flush;
}

bool exists(const std::string& path) {
  std::ifstream f(path);
  return static_cast<bool>(f);
}

json rows_for(const std::vector<std::string>& texts, const std::string& mode) {
  json rows = json::array();
  for (const auto& t : texts) {
    if (mode == "constant") {
      rows.push_back({0.2, 0.5, 0.3});
    } else if (mode == "keyword") {
      const auto r = stub::keyword_row(t);
      rows.push_back({r[0], r[1], r[2]});
    } else {
      const auto r = stub::hash_row(t);
      rows.push_back({r[0], r[1], r[2]});
    }
  }
  return rows;
}

json respond(std::int64_t id, const std::vector<std::string>& texts, stub::Variant v) {
  json rows = rows_for(texts, "hash");
  json reply = {{"id", id}};
  switch (v) {
    case stub::Variant::kValid:
      break;
    case stub::Variant::kBadNorm:
      if (!rows.empty()) rows[0][0] = rows[0][0].get<double>() + 0.1;
      break;
    case stub::Variant::kNegative:
      if (!rows.empty()) rows.back() = {1.5, -0.5, 0.0};
      break;
    case stub::Variant::kMissingRow:
      if (!rows.empty()) rows.erase(rows.size() - 1);
      else rows.push_back({0.2, 0.5, 0.3});
      break;
    case stub::Variant::kShortRow:
      if (!rows.empty()) rows[0] = {0.5, 0.5};
      else rows.push_back({1.0});
      break;
    case stub::Variant::kNonNumeric:
      if (!rows.empty()) rows[0][1] = nullptr;
      else rows.push_back({"a", "b", "c"});
      break;
    case stub::Variant::kWrongId:
      reply["id"] = id + 1000;
      break;
    case stub::Variant::kMalformed:
      std::cout << "{\"id\": " << id << ", \"probabilities\": [[0.2, 0.5\n" << std::flush;
      return nullptr;
    case stub::Variant::kError:
      reply["error"] = "stub failure";
      send(reply);
      return nullptr;
  }
  reply["probabilities"] = rows;
  return reply;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "hash";
  const std::string state = argc > 2 ? argv[2] : "";

  if (mode == "dead") return 1;
  if (mode == "hang-handshake") {
    std::this_thread::sleep_for(std::chrono::seconds(60));
    return 0;
  }
  json hello = {{"protocol", "limelight-blackbox"},
                {"version", mode == "bad-version" ? 2 : 1},
                {"classes", mode == "two-class" ? json{"hate", "none"}
                                                : json{"hate", "offensive", "none"}}};
  send(hello);

  const bool die_now = mode == "die-once" && !state.empty() && !exists(state);
  std::string line;
  while (std::getline(std::cin, line)) {
    json req;
    try {
      req = json::parse(line);
    } catch (const json::exception&) {
      send({{"id", nullptr}, {"error", "malformed request"}});
      continue;
    }
    const std::int64_t id = req.value("id", std::int64_t{-1});
    const auto texts = req.value("texts", std::vector<std::string>{});
    if (!state.empty()) {
      std::ofstream(state + ".log", std::ios::app) << id << "\n";
    }
    if (die_now) {
      std::ofstream(state) << "died\n";
      return 1;
    }
    if (mode == "slow") std::this_thread::sleep_for(std::chrono::seconds(3));

    if (mode == "fuzz") {
      const json reply = respond(id, texts, stub::fuzz_variant(texts));
      if (!reply.is_null()) send(reply);
      continue;
    }
    stub::Variant v = stub::Variant::kValid;
    if (mode == "bad-norm") v = stub::Variant::kBadNorm;
    else if (mode == "negative") v = stub::Variant::kNegative;
    else if (mode == "wrong-count") v = stub::Variant::kMissingRow;
    else if (mode == "wrong-id") v = stub::Variant::kWrongId;
    else if (mode == "malformed") v = stub::Variant::kMalformed;
    else if (mode == "error") v = stub::Variant::kError;
    if (v != stub::Variant::kValid) {
      const json reply = respond(id, texts, v);
      if (!reply.is_null()) send(reply);
      continue;
    }
    send({{"id", id}, {"probabilities", rows_for(texts, mode)}});
  }
  return 0;
}
