#include "doctest.h"

#include <fstream>

#include "json.hpp"

#include "nsc/attacks.hpp"
#include "nsc/protocols.hpp"

using namespace nsc;
using nlohmann::json;

#ifndef NSC_SOURCE_DIR
#define NSC_SOURCE_DIR "."
#endif

namespace {

json load(const std::string& rel) {
  std::ifstream in(std::string(NSC_SOURCE_DIR) + "/" + rel);
  REQUIRE(in.good());
  return json::parse(in);
}

bool type_matches(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  return false;
}

// Minimal structural validator: type, required, per-property type, enum,
// array items.  Enough for the shipped schemas.
bool validates(const json& instance, const json& schema) {
  if (schema.contains("type") && !type_matches(instance, schema["type"].get<std::string>()))
    return false;
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& v : schema["enum"]) hit = hit || v == instance;
    if (!hit) return false;
  }
  if (instance.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!instance.contains(key.get<std::string>())) return false;
    if (schema.contains("properties"))
      for (const auto& [key, sub] : schema["properties"].items())
        if (instance.contains(key) && !validates(instance[key], sub)) return false;
  }
  if (instance.is_array() && schema.contains("items"))
    for (const auto& item : instance)
      if (!validates(item, schema["items"])) return false;
  return true;
}

}  // namespace

TEST_CASE("attack reports validate against the shipped schema") {
  const json schema = load("schemas/attack_report.schema.json");
  const auto wse = run_wse_attack(AttackStrategy::measure_now(MeasureBasis::Random), 16, 50, 1);
  CHECK(validates(json::parse(wse.per_bit.to_json()), schema));
  CHECK(validates(json::parse(wse.whole_string.to_json()), schema));
  const auto binding = run_binding_attack(BinaryCode::toy("hamming7"), 3, 100, 2);
  CHECK(validates(json::parse(binding.to_json()), schema));
}

TEST_CASE("transcripts validate against the shipped schema") {
  const json schema = load("schemas/transcript.schema.json");
  Transport t;
  Rng alice(3), bob(4);
  (void)wse_run(16, t, alice, bob);
  CHECK(validates(json::parse(t.transcript_json()), schema));

  // dropped-message transcripts stay valid
  Transport t2;
  t2.arm_drop(0);
  Rng a2(3), b2(4);
  (void)wse_run(16, t2, a2, b2);
  CHECK(validates(json::parse(t2.transcript_json()), schema));
}

TEST_CASE("the validator itself rejects broken instances") {
  const json schema = load("schemas/transcript.schema.json");
  CHECK(!validates(json::parse(R"([{"direction":"sideways","type":"qubits",
        "payload_hex":"","barrier_flags":0}])"),
                   schema));
  CHECK(!validates(json::parse(R"([{"type":"qubits"}])"), schema));
  CHECK(!validates(json::parse(R"({"not":"an array"})"), schema));
}
