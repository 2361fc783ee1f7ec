// fwsim: scenario runs, parameter sweeps, signature overhead and plot tables.

#include "ndnfw/overhead.hpp"
#include "ndnfw/sweep.hpp"
#include "ndnfw/tables.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <thread>

using namespace ndnfw;

namespace {

constexpr int exitValidation = 2;

std::ofstream
openOutput(const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

int
runCommand(const std::string& path, std::optional<uint64_t> seed, const std::string& outDir)
{
  Scenario scenario = loadScenario(path);
  if (seed) {
    scenario.seed = *seed;
  }
  SimResult result = runScenario(scenario);
  if (outDir.empty()) {
    writeCsv(std::cout, result.records);
    std::cerr << summaryToJson(result.summary) << '\n';
    return 0;
  }
  std::filesystem::create_directories(outDir);
  auto csv = openOutput(std::filesystem::path(outDir) / "metrics.csv");
  writeCsv(csv, result.records);
  auto summary = openOutput(std::filesystem::path(outDir) / "summary.json");
  summary << summaryToJson(result.summary) << '\n';
  std::cerr << "wrote " << result.records.size() << " records and summary to " << outDir << '\n';
  return 0;
}

int
sweepCommand(const std::string& path, const std::string& axis, const std::vector<double>& values,
             const std::vector<uint64_t>& seeds, unsigned jobs, const std::string& outFile)
{
  Scenario base = loadScenario(path);
  auto result = sweep(base, axis, values, seeds, jobs);
  if (outFile.empty()) {
    writeSweepCsv(std::cout, result);
  }
  else {
    auto out = openOutput(outFile);
    writeSweepCsv(out, result);
  }
  return 0;
}

int
overheadCommand(const OverheadModel& model, uint64_t firmwareSize)
{
  auto report = overheadReport(model, firmwareSize);
  nlohmann::json doc = {
    {"payload_capacity", report.payloadCapacity},
    {"chunk_count", report.chunkCount},
    {"signature_overhead_bytes", report.signatureOverheadBytes},
    {"signature_overhead_kib", static_cast<double>(report.signatureOverheadBytes) / 1024.0},
  };
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int
tablesCommand(const std::string& path, const std::string& kind, uint64_t blockSize,
              std::optional<uint64_t> chunks)
{
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  auto records = parseCsv(in);
  if (kind == "progress") {
    writeProgressCsv(std::cout, progressTable(records));
  }
  else if (kind == "rate") {
    writeRateCsv(std::cout, rateTable(records));
  }
  else {
    writeRetxCsv(std::cout, retxBlocks(records, blockSize, chunks), blockSize);
  }
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Firmware roll-out simulator and experiment harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one scenario; CSV to stdout, summary JSON to stderr");
  std::string scenarioPath;
  std::optional<uint64_t> seed;
  std::string outDir;
  run->add_option("scenario", scenarioPath, "Scenario JSON file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", outDir, "Write metrics.csv and summary.json into this directory");

  auto* sw = app.add_subcommand("sweep", "Run a scenario over axis values and seeds");
  std::string sweepPath;
  std::string axis;
  std::vector<double> values;
  std::vector<uint64_t> seeds;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string sweepOut;
  sw->add_option("scenario", sweepPath, "Base scenario JSON file")->required();
  sw->add_option("--axis", axis, "Swept field")
    ->required()
    ->check(CLI::IsMember(sweepAxes()));
  sw->add_option("--values", values, "Axis values")->required()->delimiter(',');
  sw->add_option("--seeds", seeds, "Seeds")->required()->delimiter(',');
  sw->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  sw->add_option("--out", sweepOut, "Write the table here instead of stdout");

  auto* ov = app.add_subcommand(
    "overhead", "Signature overhead of per-chunk signatures. Sizes are bytes; the KiB figure in "
                "the output is binary (1 KiB = 1024 bytes), so 36 KiB firmware is 36864 bytes.");
  OverheadModel model;
  uint64_t firmwareSize = 0;
  ov->add_option("--mtu", model.mtu, "Link MTU")->capture_default_str();
  ov->add_option("--name-bytes", model.nameBytes, "Encoded name size")->capture_default_str();
  ov->add_option("--structural-bytes", model.structuralBytes, "Other packet headers")
    ->capture_default_str();
  ov->add_option("--link-bytes", model.linkHeaderBytes, "Link-layer header")->capture_default_str();
  ov->add_option("--sig-bytes", model.signatureBytes, "Signature size")->capture_default_str();
  ov->add_flag("--compressed", model.compressionEnabled,
               "Header compression: name elided, structural bytes reduced");
  ov->add_option("--compressed-structural-bytes", model.compressedStructuralBytes,
                 "Structural bytes left after compression")
    ->capture_default_str();
  ov->add_option("--firmware-size", firmwareSize, "Firmware size in bytes")->required();

  auto* tb = app.add_subcommand("tables", "Plot tables from a metrics CSV");
  std::string csvPath;
  std::string kind;
  uint64_t blockSize = 100;
  std::optional<uint64_t> chunks;
  tb->add_option("csv", csvPath, "metrics.csv from fwsim run")->required();
  tb->add_option("--kind", kind, "Table kind")
    ->required()
    ->check(CLI::IsMember({"progress", "rate", "retx"}));
  tb->add_option("--block-size", blockSize, "Chunks per block for retx")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  tb->add_option("--chunks", chunks, "Chunk count for retx blocks (default: highest seen + 1)");

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exitValidation;
  }

  try {
    if (*run) {
      return runCommand(scenarioPath, seed, outDir);
    }
    if (*sw) {
      return sweepCommand(sweepPath, axis, values, seeds, jobs, sweepOut);
    }
    if (*ov) {
      return overheadCommand(model, firmwareSize);
    }
    return tablesCommand(csvPath, kind, blockSize, chunks);
  }
  catch (const ScenarioInvalid& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return exitValidation;
  }
  catch (const MalformedCsv& e) {
    std::cerr << "malformed csv: " << e.what() << '\n';
    return exitValidation;
  }
  catch (const NoPayloadRoom& e) {
    std::cerr << "invalid model: " << e.what() << '\n';
    return exitValidation;
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
