// JSON file formats for structures, classes, step configurations and reports.

#ifndef SATWORK_IO_HPP
#define SATWORK_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "satwork/ev_engine.hpp"
#include "satwork/satclass.hpp"
#include "satwork/truth.hpp"

namespace satwork {

using Json = nlohmann::ordered_json;

class InputError : public Error {
 public:
  using Error::Error;
};

Json load_json(const std::filesystem::path& path);

// Nested "backend" values may be inline objects or paths relative to base_dir.
Backend structure_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json structure_to_json(const Backend& b);

Json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const Json& j);

SatClass satclass_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json satclass_to_json(const SatClass& s);

TruthClass truthclass_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json truthclass_to_json(const TruthClass& t);

struct StepInput {
  StepConfig config;
  std::vector<Formula> universe;
};
StepInput step_from_json(const Json& j, const std::filesystem::path& base_dir = {});

Json formulas_to_json(const std::vector<Formula>& fs);
Json report_to_json(const Report& r);
Json ct_report_to_json(const CtReport& r);
Json chain_state_to_json(const StepResult& r);

}  // namespace satwork

#endif  // SATWORK_IO_HPP
