#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pac/checks.hpp"
#include "pac/errors.hpp"
#include "pac/transforms.hpp"
#include "pac/zoo.hpp"

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const pac::NumTensor& t) {
  if (t.rank() == 0) return t[0];
  Json out = Json::array();
  const int dim = t.dim();
  if (t.rank() == 1) {
    for (int i = 0; i < dim; ++i) out.push_back(t(i));
  } else {
    for (int i = 0; i < dim; ++i) {
      Json row = Json::array();
      for (int j = 0; j < dim; ++j) row.push_back(t(i, j));
      out.push_back(std::move(row));
    }
  }
  return out;
}

Json flags_json(const pac::ClassificationReport& c) {
  return Json{{"almost_pac_metric", c.almost_pac_metric.value}, {"paracontact", c.paracontact.value},
              {"K_paracontact", c.K_paracontact.value},         {"integrable", c.integrable.value},
              {"normal", c.normal.value},                       {"paraSasakian", c.paraSasakian.value}};
}

Json summary(const pac::PacStructure& s, std::uint64_t seed) {
  const double tol = pac::default_tolerance(s.manifold());
  const pac::ClassificationReport c = pac::classify(s, tol, 64, seed);
  Json out;
  out["name"] = s.name();
  out["dim"] = s.manifold().dim();
  out["backend"] = s.manifold().backend() == pac::Backend::HomogeneousFrame ? "frame" : "chart";
  out["axiom_residual"] = pac::validate_structure(s, 64, seed).max();
  out["flags"] = flags_json(c);
  out["scal"] = c.scal;
  out["scal_star"] = c.scal_star;
  out["norm_h"] = c.norm_h;
  out["norm_P"] = c.norm_P;
  out["norm_nabla_phi"] = c.norm_nabla_phi;
  if (c.eta_einstein) {
    out["eta_einstein"] = Json{{"a", c.eta_einstein->a}, {"b", c.eta_einstein->b}};
  } else {
    out["eta_einstein"] = nullptr;
  }
  const pac::Point p = s.manifold().sample_points(1, seed)[0];
  pac::Snapshot sn(s.manifold_ptr(), p, pac::required_order({&s.g(), &s.phi(), &s.xi(), &s.eta()}));
  out["sample_point"] = p.coords;
  out["tensors"] = Json{{"g", to_json(sn(s.g()))},
                        {"phi", to_json(sn(s.phi()))},
                        {"xi", to_json(sn(s.xi()))},
                        {"eta", to_json(sn(s.eta()))}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of almost paracontact metric identities"};
  app.require_subcommand(1);

  std::string manifold, suite, format = "text", sigma;
  int points = 64;
  std::uint64_t seed = 42;
  std::optional<double> tol, alpha;

  CLI::App* verify = app.add_subcommand("verify", "run an identity suite on a zoo entry");
  verify->add_option("--manifold", manifold, "zoo entry id")->required();
  verify->add_option("--suite", suite, "axioms, curvature, connections, transforms or all")->required();
  verify->add_option("--points", points, "sample points")->capture_default_str();
  verify->add_option("--seed", seed, "random seed")->capture_default_str();
  verify->add_option("--tol", tol, "tolerance (default: 1e-10 frame, 1e-7 chart)");
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  CLI::App* list = app.add_subcommand("list", "list zoo entries");

  CLI::App* describe = app.add_subcommand("describe", "classification and tensors of a zoo entry");
  describe->add_option("--manifold", manifold, "zoo entry id")->required();

  std::string tformat = "json";
  CLI::App* transform = app.add_subcommand("transform", "apply a D-homothety or a gauge transformation");
  transform->add_option("--manifold", manifold, "zoo entry id")->required();
  auto* a_opt = transform->add_option("--alpha", alpha, "D-homothety constant");
  auto* s_opt = transform->add_option("--sigma", sigma, "gauge preset: constant, exp-bump or radial");
  a_opt->excludes(s_opt);
  transform->add_option("--format", tformat, "json")->check(CLI::IsMember({"json"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      pac::RunOptions options{points, seed, tol};
      const auto reports = pac::run_suite(manifold, suite, options);
      std::cout << pac::emit_report(reports, format == "json" ? pac::ReportFormat::Json : pac::ReportFormat::Text);
      if (format == "json") std::cout << "\n";
      return pac::exit_code(reports);
    }
    if (*list) {
      for (const std::string& id : pac::list_entries()) {
        const pac::ZooEntry& e = pac::get_entry(id);
        std::cout << id << "  " << e.notes << "\n";
      }
      return 0;
    }
    if (*describe) {
      const pac::ZooEntry& e = pac::get_entry(manifold);
      Json out = summary(e.structure, seed);
      out["id"] = e.id;
      out["notes"] = e.notes;
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*transform) {
      if (!alpha && sigma.empty()) throw pac::UsageError("transform needs --alpha or --sigma");
      const pac::ZooEntry& e = pac::get_entry(manifold);
      const pac::PacStructure& s = e.structure;
      Json out;
      out["manifold"] = e.id;
      if (alpha) {
        out["transform"] = Json{{"kind", "d-homothety"}, {"alpha", *alpha}};
        out["result"] = summary(pac::d_homothetic(s, *alpha), seed);
      } else {
        out["transform"] = Json{{"kind", "gauge"}, {"sigma", sigma}};
        out["result"] = summary(pac::gauge_transform(s, pac::sigma_preset(s.manifold_ptr(), sigma)), seed);
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const pac::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pac::LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
