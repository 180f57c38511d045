#include "measfield/workspace.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "measfield/checks.hpp"

namespace measfield {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail_entity(const std::string& kind, const std::string& name,
                              const std::string& what) {
  throw InvariantViolation(kind + " '" + name + "': " + what);
}

Weight scalar_to_weight(const json& j, bool& exact) {
  if (j.is_string()) return Weight::from_string(j.get<std::string>());
  if (j.is_number()) {
    exact = false;
    return Weight::from_double(j.get<double>());
  }
  throw ParseError("expected a number or a rational string");
}

double scalar_to_double(const json& j, bool& exact) {
  if (j.is_string()) return Weight::from_string(j.get<std::string>()).to_double();
  if (j.is_number()) {
    exact = false;
    return j.get<double>();
  }
  throw ParseError("expected a number or a rational string");
}

cd complex_from_json(const json& j, bool& exact) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("complex entries are two-element arrays [re, im]");
  double re = scalar_to_double(j[0], exact);
  double im = scalar_to_double(j[1], exact);
  return cd(re, im);
}

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name,
                                        const char* kind) {
  auto it = m.find(name);
  if (it == m.end())
    throw UnknownName(std::string("no ") + kind + " named '" + name + "'");
  return it->second;
}

void load_spaces(const json& doc, Workspace& ws) {
  if (!doc.contains("spaces")) return;
  const json& spaces = doc["spaces"];
  // plain spaces first, then products until a fixpoint (products may nest)
  std::map<std::string, const json*> pending;
  for (auto it = spaces.begin(); it != spaces.end(); ++it) {
    const json& s = it.value();
    if (s.contains("points")) {
      try {
        ws.spaces[it.key()] = {
            BorelSpace(s["points"].get<std::vector<std::string>>()),
            std::nullopt};
      } catch (const Error& e) {
        fail_entity("space", it.key(), e.what());
      }
    } else if (s.contains("product")) {
      pending[it.key()] = &s;
    } else {
      fail_entity("space", it.key(), "needs either 'points' or 'product'");
    }
  }
  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const json& p = member(*it->second, "product");
      if (!p.is_array() || p.size() != 2)
        fail_entity("space", it->first, "'product' takes [left, right]");
      std::string l = p[0].get<std::string>();
      std::string r = p[1].get<std::string>();
      if (ws.spaces.count(l) && ws.spaces.count(r)) {
        ws.spaces[it->first] = {
            product(ws.spaces[l].space, ws.spaces[r].space),
            std::make_pair(l, r)};
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
    if (!progress)
      fail_entity("space", pending.begin()->first,
                  "product refers to an unknown or cyclic space");
  }
}

void load_measures(const json& doc, Workspace& ws) {
  if (!doc.contains("measures")) return;
  for (auto it = doc["measures"].begin(); it != doc["measures"].end(); ++it) {
    const json& m = it.value();
    try {
      std::string space_name = member(m, "space").get<std::string>();
      const BorelSpace& space =
          lookup(ws.spaces, space_name, "space").space;
      const json& jweights = member(m, "weights");
      std::vector<Weight> weights;
      bool exact = true;
      for (const json& w : jweights) weights.push_back(scalar_to_weight(w, exact));
      ws.measures[it.key()] = {Measure(space, std::move(weights)), space_name};
    } catch (const Error& e) {
      fail_entity("measure", it.key(), e.what());
    }
  }
}

void load_fibered(const json& doc, Workspace& ws) {
  if (!doc.contains("fibered_measures")) return;
  for (auto it = doc["fibered_measures"].begin();
       it != doc["fibered_measures"].end(); ++it) {
    const json& f = it.value();
    try {
      std::string base_name = member(f, "base").get<std::string>();
      const BorelSpace& base = lookup(ws.spaces, base_name, "space").space;
      bool exact = true;
      if (f.contains("left")) {
        std::string left_name = f["left"].get<std::string>();
        const BorelSpace& left = lookup(ws.spaces, left_name, "space").space;
        const json& jrows = member(f, "rows");
        std::vector<std::vector<Weight>> rows;
        for (const json& jrow : jrows) {
          std::vector<Weight> row;
          for (const json& w : jrow) row.push_back(scalar_to_weight(w, exact));
          rows.push_back(std::move(row));
        }
        ws.fibered_measures[it.key()] = {
            FiberedMeasure::kernel(left, base, rows), base_name, left_name,
            std::nullopt};
      } else {
        std::string total_name = member(f, "total").get<std::string>();
        const BorelSpace& total = lookup(ws.spaces, total_name, "space").space;
        MeasurableMap projection = MeasurableMap::from_labels(
            total, base,
            member(f, "projection").get<std::vector<std::string>>());
        const json& jfibers = member(f, "fibers");
        std::vector<Measure> family;
        for (const json& jrow : jfibers) {
          std::vector<Weight> row;
          for (const json& w : jrow) row.push_back(scalar_to_weight(w, exact));
          family.emplace_back(total, std::move(row));
        }
        ws.fibered_measures[it.key()] = {
            FiberedMeasure(std::move(projection), std::move(family)),
            base_name, std::nullopt, total_name};
      }
    } catch (const Error& e) {
      fail_entity("fibered_measure", it.key(), e.what());
    }
  }
}

void load_fields(const json& doc, Workspace& ws) {
  if (!doc.contains("fields")) return;
  for (auto it = doc["fields"].begin(); it != doc["fields"].end(); ++it) {
    const json& f = it.value();
    try {
      std::string space_name = member(f, "space").get<std::string>();
      const BorelSpace& space = lookup(ws.spaces, space_name, "space").space;
      ws.fields[it.key()] = {
          HField(space, member(f, "dims").get<std::vector<int>>()),
          space_name};
    } catch (const Error& e) {
      fail_entity("field", it.key(), e.what());
    }
  }
}

void load_op_fields(const json& doc, Workspace& ws) {
  if (!doc.contains("op_fields")) return;
  for (auto it = doc["op_fields"].begin(); it != doc["op_fields"].end(); ++it) {
    const json& o = it.value();
    try {
      std::string source_name = member(o, "source").get<std::string>();
      std::string target_name = member(o, "target").get<std::string>();
      const HField& source = lookup(ws.fields, source_name, "field").field;
      const HField& target = lookup(ws.fields, target_name, "field").field;
      const json& jops = member(o, "ops");
      if (!jops.is_array() || jops.size() != source.points())
        throw ParseError("'ops' needs one matrix per point");
      bool exact = true;
      std::vector<Operator> ops;
      for (std::size_t i = 0; i < source.points(); ++i) {
        const json& jm = jops[i];
        int rows = target.dim(i), cols = source.dim(i);
        if (!jm.is_array() || static_cast<int>(jm.size()) != rows)
          throw ParseError("matrix at point " + std::to_string(i) +
                           " has the wrong row count");
        std::vector<cd> entries;
        entries.reserve(static_cast<std::size_t>(rows) * cols);
        for (const json& jrow : jm) {
          if (!jrow.is_array() || static_cast<int>(jrow.size()) != cols)
            throw ParseError("matrix at point " + std::to_string(i) +
                             " has the wrong column count");
          for (const json& je : jrow)
            entries.push_back(complex_from_json(je, exact));
        }
        ops.emplace_back(source.fiber(i), target.fiber(i), std::move(entries));
      }
      ws.op_fields[it.key()] = {
          OperatorField(source, target, std::move(ops), exact), source_name,
          target_name};
    } catch (const Error& e) {
      fail_entity("op_field", it.key(), e.what());
    }
  }
}

void load_functors(const json& doc, Workspace& ws) {
  if (!doc.contains("functors")) return;
  for (auto it = doc["functors"].begin(); it != doc["functors"].end(); ++it) {
    const json& f = it.value();
    try {
      std::string source_name = member(f, "source").get<std::string>();
      std::string target_name = member(f, "target").get<std::string>();
      std::string kernel_name = member(f, "kernel").get<std::string>();
      std::string weights_name = member(f, "weights").get<std::string>();
      const BorelSpace& source = lookup(ws.spaces, source_name, "space").space;
      const BorelSpace& target = lookup(ws.spaces, target_name, "space").space;
      const HField& kernel = lookup(ws.fields, kernel_name, "field").field;
      const FiberedMeasure& weights =
          lookup(ws.fibered_measures, weights_name, "fibered_measure").measure;
      ws.functors[it.key()] = {
          MeasurableFunctor(source, target, kernel, weights), source_name,
          target_name, kernel_name, weights_name};
    } catch (const Error& e) {
      fail_entity("functor", it.key(), e.what());
    }
  }
}

void load_transforms(const json& doc, Workspace& ws) {
  if (!doc.contains("transforms")) return;
  for (auto it = doc["transforms"].begin(); it != doc["transforms"].end();
       ++it) {
    const json& t = it.value();
    try {
      std::string source_name = member(t, "source").get<std::string>();
      std::string target_name = member(t, "target").get<std::string>();
      std::string op_name = member(t, "op_field").get<std::string>();
      const MeasurableFunctor& source =
          lookup(ws.functors, source_name, "functor").functor;
      const MeasurableFunctor& target =
          lookup(ws.functors, target_name, "functor").functor;
      const OperatorField& b =
          lookup(ws.op_fields, op_name, "op_field").op_field;
      ws.transforms[it.key()] = {make_nat_transf(b, source, target),
                                 source_name, target_name, op_name};
    } catch (const Error& e) {
      fail_entity("transform", it.key(), e.what());
    }
  }
}

ojson weight_to_json(const Weight& w) {
  if (w.exact()) return ojson(w.to_string());
  return ojson(w.to_double());
}

ojson complex_to_json(const cd& v, bool exact) {
  ojson out = ojson::array();
  if (exact) {
    out.push_back(Weight::from_double(v.real()).value().get_str());
    out.push_back(Weight::from_double(v.imag()).value().get_str());
  } else {
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

}  // namespace

Workspace load_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("document root must be an object");
  Workspace ws;
  load_spaces(doc, ws);
  load_measures(doc, ws);
  load_fibered(doc, ws);
  load_fields(doc, ws);
  load_op_fields(doc, ws);
  load_functors(doc, ws);
  load_transforms(doc, ws);
  return ws;
}

Workspace load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_text(buf.str());
}

std::string serialize(const Workspace& ws) {
  ojson doc;
  ojson spaces = ojson::object();
  for (const auto& [name, e] : ws.spaces) {
    ojson o;
    if (e.factors)
      o["product"] = {e.factors->first, e.factors->second};
    else
      o["points"] = e.space.points();
    spaces[name] = o;
  }
  doc["spaces"] = spaces;

  ojson measures = ojson::object();
  for (const auto& [name, e] : ws.measures) {
    ojson o;
    o["space"] = e.space_name;
    ojson w = ojson::array();
    for (const Weight& x : e.measure.weights()) w.push_back(weight_to_json(x));
    o["weights"] = w;
    measures[name] = o;
  }
  doc["measures"] = measures;

  ojson fibered = ojson::object();
  for (const auto& [name, e] : ws.fibered_measures) {
    ojson o;
    if (e.left_name) {
      o["left"] = *e.left_name;
      o["base"] = e.base_name;
      ojson rows = ojson::array();
      const BorelSpace& left = e.measure.kernel_left();
      for (std::size_t b = 0; b < e.measure.base().size(); ++b) {
        ojson row = ojson::array();
        for (std::size_t l = 0; l < left.size(); ++l)
          row.push_back(weight_to_json(e.measure.kernel_weight(l, b)));
        rows.push_back(row);
      }
      o["rows"] = rows;
    } else {
      o["total"] = *e.total_name;
      o["base"] = e.base_name;
      ojson proj = ojson::array();
      const MeasurableMap& p = e.measure.projection();
      for (std::size_t t = 0; t < p.source().size(); ++t)
        proj.push_back(p.target().label(p.apply(t)));
      o["projection"] = proj;
      ojson fibers = ojson::array();
      for (const Measure& m : e.measure.family()) {
        ojson row = ojson::array();
        for (const Weight& x : m.weights()) row.push_back(weight_to_json(x));
        fibers.push_back(row);
      }
      o["fibers"] = fibers;
    }
    fibered[name] = o;
  }
  doc["fibered_measures"] = fibered;

  ojson fields = ojson::object();
  for (const auto& [name, e] : ws.fields) {
    ojson o;
    o["space"] = e.space_name;
    o["dims"] = e.field.dims();
    fields[name] = o;
  }
  doc["fields"] = fields;

  ojson op_fields = ojson::object();
  for (const auto& [name, e] : ws.op_fields) {
    ojson o;
    o["source"] = e.source_name;
    o["target"] = e.target_name;
    ojson ops = ojson::array();
    for (const Operator& op : e.op_field.ops()) {
      ojson m = ojson::array();
      for (int r = 0; r < op.rows(); ++r) {
        ojson row = ojson::array();
        for (int c = 0; c < op.cols(); ++c)
          row.push_back(complex_to_json(op.at(r, c), e.op_field.exact()));
        m.push_back(row);
      }
      ops.push_back(m);
    }
    o["ops"] = ops;
    op_fields[name] = o;
  }
  doc["op_fields"] = op_fields;

  ojson functors = ojson::object();
  for (const auto& [name, e] : ws.functors) {
    ojson o;
    o["source"] = e.source_name;
    o["target"] = e.target_name;
    o["kernel"] = e.kernel_name;
    o["weights"] = e.weights_name;
    functors[name] = o;
  }
  doc["functors"] = functors;

  ojson transforms = ojson::object();
  for (const auto& [name, e] : ws.transforms) {
    ojson o;
    o["source"] = e.source_name;
    o["target"] = e.target_name;
    o["op_field"] = e.op_field_name;
    transforms[name] = o;
  }
  doc["transforms"] = transforms;

  return doc.dump(2) + "\n";
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string require_arg(const std::map<std::string, std::string>& args,
                        const std::string& key) {
  auto it = args.find(key);
  if (it == args.end())
    throw ParseError("missing argument '" + key + "='");
  return it->second;
}

RunResult run_info(const Workspace& ws) {
  std::ostringstream out;
  for (const auto& [name, e] : ws.spaces) {
    out << "SPACE " << name << " points=" << e.space.size();
    if (e.factors)
      out << " product=" << e.factors->first << "x" << e.factors->second;
    out << "\n";
  }
  for (const auto& [name, e] : ws.measures)
    out << "MEASURE " << name << " space=" << e.space_name
        << " mass=" << format_real(total_mass(e.measure).to_double())
        << " exact=" << (e.measure.exact() ? "yes" : "no") << "\n";
  for (const auto& [name, e] : ws.fibered_measures)
    out << "FIBERED " << name << " base=" << e.base_name << " shape="
        << (e.left_name ? "kernel" : "generic") << "\n";
  for (const auto& [name, e] : ws.fields) {
    out << "FIELD " << name << " space=" << e.space_name << " dims=[";
    for (std::size_t i = 0; i < e.field.points(); ++i)
      out << (i ? "," : "") << e.field.dim(i);
    out << "]\n";
  }
  for (const auto& [name, e] : ws.op_fields)
    out << "OPFIELD " << name << " source=" << e.source_name
        << " target=" << e.target_name
        << " norm=" << format_real(opfield_norm(e.op_field)) << "\n";
  for (const auto& [name, e] : ws.functors)
    out << "FUNCTOR " << name << " source=" << e.source_name
        << " target=" << e.target_name << " kernel=" << e.kernel_name
        << " weights=" << e.weights_name << "\n";
  for (const auto& [name, e] : ws.transforms)
    out << "TRANSFORM " << name << " source=" << e.source_name
        << " target=" << e.target_name << " op_field=" << e.op_field_name
        << "\n";
  return {out.str(), 0};
}

RunResult run_integrate(const std::map<std::string, std::string>& args,
                        const Workspace& ws) {
  std::string field_name = require_arg(args, "field");
  std::string measure_name = require_arg(args, "measure");
  const HField& h = lookup(ws.fields, field_name, "field").field;
  const Measure& mu = lookup(ws.measures, measure_name, "measure").measure;
  std::ostringstream out;
  out << "INTEGRATE field=" << field_name << " measure=" << measure_name
      << "\n";
  try {
    WeightedHilbert w = direct_integral_obj(h, mu);
    for (const auto& b : w.blocks())
      out << "BLOCK " << b.label << " dim=" << b.dim
          << " weight=" << format_real(b.weight.to_double()) << "\n";
    out << "TOTAL dim=" << w.total_dim() << "\n";
  } catch (const SpaceMismatch&) {
    throw SpaceMismatch("field '" + field_name + "' and measure '" +
                        measure_name + "' live on different spaces");
  }
  return {out.str(), 0};
}

RunResult run_apply(const std::map<std::string, std::string>& args,
                    const Workspace& ws) {
  std::string functor_name = require_arg(args, "functor");
  std::string field_name = require_arg(args, "field");
  const MeasurableFunctor& f =
      lookup(ws.functors, functor_name, "functor").functor;
  const HField& h = lookup(ws.fields, field_name, "field").field;
  std::ostringstream out;
  out << "APPLY functor=" << functor_name << " field=" << field_name << "\n";
  try {
    HField image = apply_obj(f, h);
    for (std::size_t i = 0; i < image.points(); ++i)
      out << "FIBER " << image.space().label(i) << " dim=" << image.dim(i)
          << "\n";
  } catch (const SpaceMismatch&) {
    throw SpaceMismatch("field '" + field_name +
                        "' is not an object of the source of '" +
                        functor_name + "'");
  }
  return {out.str(), 0};
}

RunResult run_compose(const std::map<std::string, std::string>& args,
                      const Workspace& ws) {
  std::string first_name = require_arg(args, "first");
  std::string second_name = require_arg(args, "second");
  const MeasurableFunctor& f =
      lookup(ws.functors, first_name, "functor").functor;
  const MeasurableFunctor& g =
      lookup(ws.functors, second_name, "functor").functor;
  std::ostringstream out;
  out << "COMPOSE first=" << first_name << " second=" << second_name << "\n";
  ComposedFunctor c = [&] {
    try {
      return compose(f, g);
    } catch (const SpaceMismatch&) {
      throw SpaceMismatch("functors '" + first_name + "' and '" +
                          second_name + "' are not composable");
    }
  }();
  const MeasurableFunctor& comp = c.functor();
  const BorelSpace& x = comp.source_space();
  const BorelSpace& z = comp.target_space();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < z.size(); ++k) {
      out << "WEIGHT " << pair_label(x.label(i), z.label(k)) << " "
          << format_real(comp.weight(i, k).to_double()) << "\n";
      out << "KERNEL " << pair_label(x.label(i), z.label(k))
          << " dim=" << comp.kernel_dim(i, k) << "\n";
    }
  std::vector<FunctorComparison> comparisons =
      compare_on_probes(c, default_probes(x));
  for (std::size_t p = 0; p < comparisons.size(); ++p) {
    double residual = 0.0;
    for (const Operator& m : comparisons[p].unitary.ops()) {
      residual = std::max(
          residual,
          max_abs_diff(adjoint(m) * m, Operator::identity(m.source())));
      residual = std::max(
          residual,
          max_abs_diff(m * adjoint(m), Operator::identity(m.target())));
    }
    out << "PROBE " << p << " unitarity=" << format_real(residual) << "\n";
  }
  return {out.str(), 0};
}

RunResult run_check(const std::map<std::string, std::string>& args,
                    const Workspace& ws, double tol) {
  std::string suite = require_arg(args, "suite");
  std::vector<CheckReport> reports;
  if (suite == "all") {
    for (const std::string& name : suite_names())
      reports.push_back(run_suite(name, ws, tol));
  } else {
    reports.push_back(run_suite(suite, ws, tol));
  }
  return {format_reports(reports), all_pass(reports) ? 0 : 1};
}

}  // namespace

RunResult run(const std::string& command,
              const std::map<std::string, std::string>& args,
              const Workspace& ws, double tol) {
  if (command == "info") return run_info(ws);
  if (command == "integrate") return run_integrate(args, ws);
  if (command == "apply") return run_apply(args, ws);
  if (command == "compose") return run_compose(args, ws);
  if (command == "check") return run_check(args, ws, tol);
  throw UnknownName("no command '" + command +
                    "' (expected integrate, compose, apply, check, info)");
}

}  // namespace measfield
