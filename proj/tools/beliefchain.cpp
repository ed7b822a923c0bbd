// beliefchain: belief-function calculus over chains of uncertain rules.
//
// Subcommands:
//   check FILE                      parse and validate a model
//   joint FILE --link A:E           joint belief report for one link
//   propagate FILE [--target VAR]   marginal reports along the chain
//   compare FILE --link A:E         all three construction methods side by side

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ds/format.hpp"
#include "ds/model.hpp"

namespace {

struct OutputOptions {
  std::string format = "text";
  int precision = 6;
  std::size_t max_enum = 12;
  bool quiet = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--precision", opts.precision, "Display decimal places (round-half-even)")
      ->check(CLI::Range(0, 17))
      ->capture_default_str();
  cmd->add_option("--max-enum", opts.max_enum, "Report enumeration guard (configurations)")
      ->capture_default_str();
  cmd->add_flag("--quiet", opts.quiet, "Suppress report output");
}

ds::ModelSource read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return {ss.str(), "<stdin>"};
  }
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return {ss.str(), path};
}

std::pair<std::string, std::string> split_link_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size())
    throw ds::model_error("--link expects FROM:TO, got '" + spec + "'");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::size_t find_link(const ds::ChainModel& model, const std::string& spec) {
  auto [from, to] = split_link_spec(spec);
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    if (model.links[i].table.antecedent().name == from &&
        model.links[i].table.consequent().name == to)
      return i;
  }
  throw ds::model_error("model has no link " + from + " -> " + to);
}

// For the first link of the chain the incoming root belief is folded in;
// deeper links are reported as constructed.
ds::BeliefReport link_report(const ds::ChainModel& model, std::size_t index,
                             const ds::LinkJoint& link, std::size_t max_enum) {
  if (index == 0) {
    ds::LinkPropagation p = ds::propagate_link(model.root_belief, link);
    return ds::report(p.joint, p.conflict, max_enum);
  }
  return ds::report(link.joint, 0.0, max_enum);
}

void emit(const std::string& text, const OutputOptions& opts) {
  if (!opts.quiet) std::cout << text;
}

int run_check(const std::string& path, const OutputOptions& opts) {
  ds::ModelSource src = read_source(path);
  ds::ChainModel model = ds::parse_model(src);
  std::ostringstream out;
  out << "parsed " << src.provenance << ": " << model.variables.size() << " variable(s), "
      << model.links.size() << " link(s)\n";
  out << "chain:";
  for (const auto& v : model.variables) out << " " << v.name;
  out << "\n";
  for (const auto& link : model.links)
    out << "link " << link.table.antecedent().name << " -> " << link.table.consequent().name
        << ": method=" << ds::to_string(link.method) << ", "
        << link.joint.focals().size() << " joint focal(s)\n";
  out << "belief on " << model.variables[0].name << ": " << model.root_belief.focals().size()
      << " focal(s)\n";
  out << "ok\n";
  emit(out.str(), opts);
  return 0;
}

int run_joint(const std::string& path, const std::string& link_spec,
              const std::string& method_override, const OutputOptions& opts) {
  ds::ChainModel model = ds::parse_model(read_source(path));
  std::size_t idx = find_link(model, link_spec);
  ds::LinkJoint link = model.links[idx];
  if (!method_override.empty())
    link = ds::build_link(link.table, ds::method_from_string(method_override));
  ds::BeliefReport rep = link_report(model, idx, link, opts.max_enum);
  std::string method = ds::to_string(link.method);
  if (opts.format == "csv")
    emit(ds::render_csv(rep, opts.precision), opts);
  else if (opts.format == "json")
    emit(ds::render_json(rep, method, opts.precision).dump(2) + "\n", opts);
  else
    emit(ds::render_text(rep, method, opts.precision), opts);
  return 0;
}

int run_compare(const std::string& path, const std::string& link_spec,
                const OutputOptions& opts) {
  ds::ChainModel model = ds::parse_model(read_source(path));
  std::size_t idx = find_link(model, link_spec);
  const ds::ConditionalBeliefTable& table = model.links[idx].table;
  std::vector<ds::MethodReport> reports;
  for (ds::Method m : {ds::Method::embedding, ds::Method::consonant, ds::Method::dissonant}) {
    ds::LinkJoint link = ds::build_link(table, m);
    reports.push_back({ds::to_string(m), link_report(model, idx, link, opts.max_enum)});
  }
  if (opts.format == "csv")
    emit(ds::render_compare_csv(reports, opts.precision), opts);
  else if (opts.format == "json")
    emit(ds::render_compare_json(reports, opts.precision).dump(2) + "\n", opts);
  else
    emit(ds::render_compare_text(reports, opts.precision), opts);
  return 0;
}

int run_propagate(const std::string& path, const std::string& target,
                  const OutputOptions& opts) {
  ds::ChainModel model = ds::parse_model(read_source(path));
  ds::ChainResult result = ds::propagate_chain(model);
  std::size_t begin = 0, end = model.variables.size();
  if (!target.empty()) {
    bool found = false;
    for (std::size_t i = 0; i < model.variables.size(); ++i) {
      if (model.variables[i].name == target) {
        begin = i;
        end = i + 1;
        found = true;
      }
    }
    if (!found) throw ds::model_error("model has no variable '" + target + "'");
  }
  bool single = (end - begin) == 1;
  std::string text_out;
  std::string csv_out = single ? "" : "variable,subset,m,bel,pl\n";
  nlohmann::json json_out = nlohmann::json::array();
  for (std::size_t i = begin; i < end; ++i) {
    double conflict = (i == 0) ? 0.0 : result.conflicts[i - 1];
    std::string method = (i == 0) ? "" : ds::to_string(model.links[i - 1].method);
    ds::BeliefReport rep = ds::report(result.marginals[i], conflict, opts.max_enum);
    if (opts.format == "csv") {
      if (single) {
        csv_out = ds::render_csv(rep, opts.precision);
      } else {
        for (const auto& row : rep.rows)
          csv_out += model.variables[i].name + "," + ds::csv_quote(row.subset.to_string()) +
                     "," + ds::fixed_number(row.m, opts.precision) + "," +
                     ds::fixed_number(row.bel, opts.precision) + "," +
                     ds::fixed_number(row.pl, opts.precision) + "\n";
      }
    } else if (opts.format == "json") {
      nlohmann::json j = ds::render_json(rep, method, opts.precision);
      j["variable"] = model.variables[i].name;
      json_out.push_back(std::move(j));
    } else {
      text_out += ds::render_text(rep, method, opts.precision);
      if (i + 1 < end) text_out += "\n";
    }
  }
  if (opts.format == "csv")
    emit(csv_out, opts);
  else if (opts.format == "json")
    emit((single ? json_out[0] : json_out).dump(2) + "\n", opts);
  else
    emit(text_out, opts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-function calculus over chains of uncertain rules"};
  app.require_subcommand(1);

  std::string file, link_spec, method_override, target;
  OutputOptions opts;

  CLI::App* check = app.add_subcommand("check", "Parse and validate a model");
  check->add_option("file", file, "Model file, or '-' for stdin")->required();
  add_output_options(check, opts);

  CLI::App* joint = app.add_subcommand("joint", "Joint belief report for one link");
  joint->add_option("file", file, "Model file, or '-' for stdin")->required();
  joint->add_option("--link", link_spec, "Link as FROM:TO")->required();
  joint->add_option("--method", method_override, "Override the link's construction method")
      ->check(CLI::IsMember({"embedding", "consonant", "dissonant"}));
  add_output_options(joint, opts);

  CLI::App* propagate = app.add_subcommand("propagate", "Propagate beliefs along the chain");
  propagate->add_option("file", file, "Model file, or '-' for stdin")->required();
  propagate->add_option("--target", target, "Report only this variable's marginal");
  add_output_options(propagate, opts);

  CLI::App* compare = app.add_subcommand("compare", "All three methods side by side");
  compare->add_option("file", file, "Model file, or '-' for stdin")->required();
  compare->add_option("--link", link_spec, "Link as FROM:TO")->required();
  add_output_options(compare, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream dummy;
    int code = app.exit(e, dummy, dummy);
    if (code != 0) std::cerr << dummy.str();
    else std::cout << dummy.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(check)) return run_check(file, opts);
    if (app.got_subcommand(joint)) return run_joint(file, link_spec, method_override, opts);
    if (app.got_subcommand(propagate)) return run_propagate(file, target, opts);
    if (app.got_subcommand(compare)) return run_compare(file, link_spec, opts);
  } catch (const ds::parse_error& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return 1;
  } catch (const std::ios_base::failure& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ds::conflict_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ds::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
