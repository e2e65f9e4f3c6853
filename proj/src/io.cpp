#include "aag/io.hpp"

#include <fstream>

#include "aag/error.hpp"

namespace aag {

namespace {

Json set_json(VertexSet s) {
  Json a = Json::array();
  for (Vertex v : s) a.push_back(v);
  return a;
}

template <class T>
T field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InvalidInput(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("field '") + name + "': " + e.what());
  }
}

const char* phase_name(CrashPhase p) { return p == CrashPhase::BeforeUpdate ? "before-update" : "after-update"; }

CrashPhase phase_from(const std::string& s) {
  if (s == "before-update") return CrashPhase::BeforeUpdate;
  if (s == "after-update") return CrashPhase::AfterUpdate;
  throw InvalidInput("crash phase must be before-update or after-update, got '" + s + "'");
}

Json optional_vertex(const std::optional<Vertex>& v) { return v ? Json(*v) : Json(nullptr); }

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const ScheduleOutcome& s) {
  Json objects = Json::array();
  for (const auto& o : s.objects) {
    Json cuts = Json::array();
    for (int c : o.cuts) cuts.push_back(c < 0 ? Json(nullptr) : Json(c));
    objects.push_back({{"order", o.order}, {"cuts", cuts}});
  }
  Json crashes = Json::array();
  for (const auto& c : s.crashes)
    crashes.push_back({{"proc", c.proc}, {"object", c.object}, {"phase", phase_name(c.phase)}});
  return {{"kind", "async"}, {"n", s.n}, {"objects", objects}, {"crashes", crashes}};
}

Json to_json(const RoundAdversary& a) {
  Json crashes = Json::array();
  for (const auto& c : a.crashes) crashes.push_back({{"proc", c.proc}, {"round", c.round}, {"recipients", c.recipients}});
  return crashes;
}

Json to_json(const TraceSchedule& s) {
  if (const auto* a = std::get_if<ScheduleOutcome>(&s)) return to_json(*a);
  const auto& y = std::get<SyncSchedule>(s);
  return {{"kind", "sync"}, {"f", y.f}, {"crashes", to_json(y.adversary)}};
}

Json to_json(const ExecutionTrace& tr) {
  Json edges = Json::array();
  for (auto [u, v] : tr.graph_edges) edges.push_back({u, v});
  Json iterations = Json::array();
  for (const auto& it : tr.iterations) {
    Json views = Json::array(), chosen = Json::array();
    for (VertexSet v : it.views) views.push_back(set_json(v));
    for (Vertex c : it.chosen) chosen.push_back(c < 0 ? Json(nullptr) : Json(c));
    iterations.push_back({{"t", it.t}, {"views", views}, {"chosen", chosen}});
  }
  Json outputs = Json::array();
  for (const auto& o : tr.outputs) outputs.push_back(o ? Json(*o) : Json("CRASHED"));
  return {{"graph", {{"name", tr.graph_name}, {"n", tr.graph_n}, {"edges", edges}}},
          {"protocol", tr.protocol},
          {"inputs", tr.inputs},
          {"iterations", iterations},
          {"outputs", outputs},
          {"schedule", to_json(tr.schedule)},
          {"seed", tr.seed ? Json(*tr.seed) : Json(nullptr)}};
}

Json to_json(const Labelling& lab) {
  return {{"labels", lab.labels},
          {"cycle", lab.cycle},
          {"v0", optional_vertex(lab.v0)},
          {"v1", optional_vertex(lab.v1)},
          {"v2", optional_vertex(lab.v2)}};
}

Json to_json(const ClassReport& r) {
  const auto& s = r.sufficient_conditions;
  Json j = {{"chordal", r.chordal},
            {"bridged", r.bridged},
            {"nicely_bridged", r.nicely_bridged ? Json(*r.nicely_bridged) : Json(nullptr)},
            {"radius", r.radius},
            {"diameter", r.diameter},
            {"self_centered_k", r.self_centered_k ? Json(*r.self_centered_k) : Json(nullptr)},
            {"sufficient_conditions",
             {{"is_chordal", s.is_chordal},
              {"no_3sun", s.no_3sun},
              {"wheels_uniquely_centered", s.wheels_uniquely_centered},
              {"k4_free", s.k4_free}}},
            {"lower_bound_labelling", r.lower_bound_labelling ? to_json(*r.lower_bound_labelling) : Json(nullptr)},
            {"lower_bound_searched", r.lower_bound_searched},
            {"chordal_witness_cycle", r.chordal_witness_cycle},
            {"bridged_witness_cycle", r.bridged_witness_cycle}};
  return j;
}

Json to_json(const Verdict& v) {
  Json j = {{"name", v.name}, {"pass", v.pass}, {"gate", v.gate}};
  if (!v.pass) j["t"] = v.t < 0 ? Json("final") : Json(v.t);
  if (!v.detail.empty()) j["detail"] = v.detail;
  if (!v.witnesses.empty()) j["witnesses"] = v.witnesses;
  return j;
}

Json to_json(const VerdictBundle& b) {
  Json list = Json::array();
  for (const auto& v : b.verdicts) list.push_back(to_json(v));
  Json j = {{"pass", b.pass()}, {"verdicts", list}};
  if (const Verdict* f = b.first_failure()) j["first_failure"] = to_json(*f);
  return j;
}

Json to_json(const SearchResult& r) {
  Json j = {{"c", r.c},
            {"rounds", r.rounds},
            {"result", r.sat ? "SAT" : "UNSAT"},
            {"vertices", r.vertices},
            {"triangles", r.triangles},
            {"variables", r.variables},
            {"clauses", r.clauses},
            {"decisions", r.decisions},
            {"conflicts", r.conflicts},
            {"propagations", r.propagations}};
  if (r.sat) j["labels"] = r.labels;
  return j;
}

Json to_json(const ProtocolMetadata& m) {
  return {{"id", m.id}, {"num_objects", m.num_objects}, {"wait_rule", m.wait_rule.describe()}, {"formula", m.formula}};
}

ScheduleOutcome schedule_from_json(const Json& j) {
  return guarded("schedule", [&] {
    ScheduleOutcome s;
    if (j.contains("kind") && field<std::string>(j, "kind") != "async") throw InvalidInput("expected an async schedule");
    s.n = field<int>(j, "n");
    for (const Json& o : field<Json>(j, "objects")) {
      ObjectSchedule os;
      os.order = field<std::vector<int>>(o, "order");
      for (const Json& c : field<Json>(o, "cuts")) os.cuts.push_back(c.is_null() ? -1 : c.get<int>());
      s.objects.push_back(std::move(os));
    }
    for (const Json& c : field<Json>(j, "crashes"))
      s.crashes.push_back({field<int>(c, "proc"), field<int>(c, "object"), phase_from(field<std::string>(c, "phase"))});
    return s;
  });
}

RoundAdversary adversary_from_json(const Json& j) {
  return guarded("adversary", [&] {
    const Json& list = j.is_object() ? j.at("crashes") : j;
    if (!list.is_array()) throw InvalidInput("adversary must be a list of crashes");
    RoundAdversary a;
    for (const Json& c : list)
      a.crashes.push_back({field<int>(c, "proc"), field<int>(c, "round"), field<std::vector<int>>(c, "recipients")});
    return a;
  });
}

ExecutionTrace trace_from_json(const Json& j) {
  return guarded("trace", [&] {
    ExecutionTrace tr;
    const Json g = field<Json>(j, "graph");
    tr.graph_name = field<std::string>(g, "name");
    tr.graph_n = field<int>(g, "n");
    for (const Json& e : field<Json>(g, "edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("edges must be pairs");
      tr.graph_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    tr.protocol = field<std::string>(j, "protocol");
    tr.inputs = field<std::vector<Vertex>>(j, "inputs");
    for (const Json& it : field<Json>(j, "iterations")) {
      IterationRecord rec;
      rec.t = field<int>(it, "t");
      for (const Json& v : field<Json>(it, "views")) {
        VertexSet s;
        for (const Json& x : v) {
          int u = x.get<int>();
          if (u < 0 || u >= kMaxVertices) throw InvalidInput("view member out of range");
          s.insert(u);
        }
        rec.views.push_back(s);
      }
      for (const Json& c : field<Json>(it, "chosen")) rec.chosen.push_back(c.is_null() ? -1 : c.get<int>());
      tr.iterations.push_back(std::move(rec));
    }
    for (const Json& o : field<Json>(j, "outputs")) {
      if (o.is_string()) {
        if (o.get<std::string>() != "CRASHED") throw InvalidInput("output must be a vertex or CRASHED");
        tr.outputs.emplace_back();
      } else {
        tr.outputs.emplace_back(o.get<int>());
      }
    }
    const Json s = field<Json>(j, "schedule");
    if (s.contains("kind") && s.at("kind") == "sync")
      tr.schedule = SyncSchedule{field<int>(s, "f"), adversary_from_json(s.at("crashes"))};
    else
      tr.schedule = schedule_from_json(s);
    if (j.contains("seed") && !j.at("seed").is_null()) tr.seed = j.at("seed").get<std::uint64_t>();
    return tr;
  });
}

Labelling labelling_from_json(const Json& j) {
  return guarded("labelling", [&] {
    Labelling lab;
    lab.labels = field<std::vector<int>>(j, "labels");
    lab.cycle = field<std::vector<int>>(j, "cycle");
    for (auto [name, slot] : {std::pair{"v0", &lab.v0}, std::pair{"v1", &lab.v1}, std::pair{"v2", &lab.v2}})
      if (j.contains(name) && !j.at(name).is_null()) *slot = j.at(name).get<int>();
    return lab;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace aag
