#include "grefute/service.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "grefute/error.hpp"
#include "grefute/problem.hpp"
#include "grefute/render_dot.hpp"
#include "grefute/syntax.hpp"

namespace grefute {

namespace {

struct ApiError {
  int status;
  std::string code;
  std::string message;
  Json locus;
};

[[noreturn]] void api_fail(int status, std::string code, std::string message, Json locus = nullptr) {
  throw ApiError{status, std::move(code), std::move(message), std::move(locus)};
}

Json error_body(const ApiError& e) {
  Json j{{"code", e.code}, {"message", e.message}};
  if (!e.locus.is_null()) j["locus"] = e.locus;
  return j;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : path.substr(0, path.find('?'))) {
    if (c == '/') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Json labelled_json(const LabelledSlices& ls) {
  Json arr = Json::array();
  for (const auto& [id, s] : ls) arr.push_back(Json{{"id", id}, {"slice", to_json(s)}});
  return arr;
}

const Slice* live_slice(const SessionState& st, const std::string& id) {
  for (const auto& [k, s] : st.slices)
    if (k == id) return &s;
  return nullptr;
}

std::size_t read_size(const Json& req, const char* key, std::size_t dflt) {
  if (!req.contains(key)) return dflt;
  const Json& v = req.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    api_fail(400, "bad_request", std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

std::string status_name(SessionStatus s) {
  switch (s) {
    case SessionStatus::Open: return "OPEN";
    case SessionStatus::Refuted: return "REFUTED";
    case SessionStatus::Saturated: return "SATURATED";
    case SessionStatus::Exhausted: return "EXHAUSTED";
  }
  return "OPEN";
}

static SessionStatus status_from_name(const std::string& s) {
  if (s == "REFUTED") return SessionStatus::Refuted;
  if (s == "SATURATED") return SessionStatus::Saturated;
  if (s == "EXHAUSTED") return SessionStatus::Exhausted;
  return SessionStatus::Open;
}

struct Service::Session {
  std::mutex mutate;  // one command at a time
  mutable std::mutex snap;
  std::shared_ptr<const SessionState> state;

  std::shared_ptr<const SessionState> get() const {
    std::lock_guard lock(snap);
    return state;
  }
  void publish(std::shared_ptr<const SessionState> s) {
    std::lock_guard lock(snap);
    state = std::move(s);
  }
};

Json session_view(const SessionState& s) {
  Json slices = Json::array();
  for (const auto& [id, sl] : s.slices) {
    Json arcs = Json::array();
    for (std::size_t j = 0; j < sl.arcs().size(); ++j)
      if (sl.arcs()[j].expr.is_cmpl_slice()) arcs.push_back(j);
    Json templates = Json::array();
    std::size_t k = 0;
    for (const Slice& t : complemented_slices(sl))
      templates.push_back(Json{{"index", k++}, {"arity", t.arity()}, {"t", to_json(t)}});
    slices.push_back(Json{{"id", id},
                          {"slice", to_json(sl)},
                          {"complementedArcs", arcs},
                          {"templates", templates},
                          {"nodes", to_json(sl.nodes())}});
  }
  Json j{{"id", s.id}, {"status", status_name(s.status)}, {"premises", s.premises},
         {"conclusion", s.conclusion}, {"arity", 0}, {"slices", slices}};
  if (s.model) {
    j["model"] = to_json(*s.model);
    j["saturatedSlice"] = s.saturated_slice;
  }
  return j;
}

Service::Service(std::optional<std::filesystem::path> journal_dir) : journal_(std::move(journal_dir)) {
  if (journal_) {
    std::filesystem::create_directories(*journal_);
    reload();
  }
}

Service::~Service() = default;

std::size_t Service::session_count() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) api_fail(404, "not_found", "no session " + id);
  return it->second;
}

std::shared_ptr<const SessionState> Service::snapshot(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second->get();
}

namespace {

// Builds the opening state: difference slice, basic form, zero slices erased.
std::shared_ptr<SessionState> open_state(const std::string& id, const std::vector<std::string>& premises,
                                         const std::string& conclusion) {
  Signature sig;
  std::vector<Formula> fs;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    try {
      fs.push_back(parse_formula(premises[i], &sig));
    } catch (const ParseError& e) {
      api_fail(400, "parse_error", e.detail(), Json{{"field", "premises"}, {"index", i}, {"offset", e.offset()}});
    }
  }
  Formula concl = Formula::falsum();
  try {
    concl = parse_formula(conclusion, &sig);
  } catch (const ParseError& e) {
    api_fail(400, "parse_error", e.detail(), Json{{"field", "conclusion"}, {"offset", e.offset()}});
  }
  auto st = std::make_shared<SessionState>();
  st->id = id;
  st->premises = premises;
  st->conclusion = conclusion;
  BasicForm bf = to_basic(Expression::slice(consequence_slice(fs, concl)));
  st->trace.conversion = std::move(bf.trace);
  st->initial = label_slices(bf.graph);
  for (const auto& [sid, s] : st->initial) {
    if (auto w = is_zero_slice(s)) {
      st->trace.events.push_back({DerivationEvent::Kind::Erase, sid, {}, {}, {}, *w, {}});
    } else {
      st->slices.emplace_back(sid, s);
    }
  }
  if (st->slices.empty()) st->status = SessionStatus::Refuted;
  return st;
}

// Delta between two slice lists plus the events that led there.
Json make_delta(const SessionState& before, const SessionState& after, std::size_t first_event) {
  std::set<std::string> old_ids, new_ids;
  for (const auto& [id, s] : before.slices) old_ids.insert(id);
  for (const auto& [id, s] : after.slices) new_ids.insert(id);
  Json removed = Json::array(), added = Json::array(), erased = Json::array(), events = Json::array();
  for (const auto& id : old_ids)
    if (!new_ids.count(id)) removed.push_back(id);
  for (const auto& [id, s] : after.slices)
    if (!old_ids.count(id)) added.push_back(Json{{"id", id}, {"slice", to_json(s)}});
  for (std::size_t i = first_event; i < after.trace.events.size(); ++i) {
    const DerivationEvent& e = after.trace.events[i];
    events.push_back(to_json(e));
    if (e.kind == DerivationEvent::Kind::Erase)
      erased.push_back(Json{{"id", e.slice}, {"witness", to_json(*e.witness)}});
  }
  Json d{{"status", status_name(after.status)}, {"events", events}, {"removed", removed},
         {"added", added}, {"erased", erased}};
  if (after.model && !before.model) {
    d["model"] = to_json(*after.model);
    d["saturatedSlice"] = after.saturated_slice;
  }
  return d;
}

std::vector<std::string> string_list(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) api_fail(400, "bad_request", std::string("\"") + key + "\" must be an array");
  for (const Json& x : j.at(key)) {
    if (!x.is_string()) api_fail(400, "bad_request", std::string("\"") + key + "\" must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

Json Service::create(const Json& req) {
  if (!req.is_object()) api_fail(400, "bad_request", "expected a JSON object");
  std::vector<std::string> premises;
  std::string conclusion = "false";
  if (req.contains("problem")) {
    if (!req.at("problem").is_string()) api_fail(400, "bad_request", "\"problem\" must be a string");
    // re-render so the session keeps one formula per entry
    try {
      Problem p = parse_problem(req.at("problem").get<std::string>());
      for (const Formula& f : p.premises) premises.push_back(render_formula(f));
      if (p.conclusion) conclusion = render_formula(*p.conclusion);
    } catch (const ParseError& e) {
      api_fail(400, "parse_error", e.detail(), Json{{"field", "problem"}, {"offset", e.offset()}});
    }
  } else {
    premises = string_list(req, "premises");
    if (req.contains("conclusion")) {
      if (!req.at("conclusion").is_string()) api_fail(400, "bad_request", "\"conclusion\" must be a string");
      conclusion = req.at("conclusion").get<std::string>();
    }
  }

  std::string id;
  {
    std::unique_lock lock(map_mutex_);
    id = "s" + std::to_string(next_id_++);
  }
  auto st = open_state(id, premises, conclusion);
  auto session = std::make_shared<Session>();
  session->publish(st);
  {
    std::unique_lock lock(map_mutex_);
    sessions_.emplace(id, session);
  }
  journal(id, Json{{"op", "create"}, {"premises", premises}, {"conclusion", conclusion}});

  Json out = session_view(*st);
  out["initial"] = labelled_json(st->initial);
  Json events = Json::array();
  for (const DerivationEvent& e : st->trace.events) events.push_back(to_json(e));
  out["events"] = events;
  return out;
}

Json Service::expand(Session& s, const Json& req) {
  std::lock_guard lock(s.mutate);
  auto cur = s.get();
  if (cur->status != SessionStatus::Open)
    api_fail(409, "conflict", "session is " + status_name(cur->status));
  if (!req.is_object() || !req.contains("slice") || !req.at("slice").is_string())
    api_fail(400, "bad_request", "expansion needs a \"slice\" id");
  const std::string sid = req.at("slice").get<std::string>();
  const Slice* sl = live_slice(*cur, sid);
  if (!sl) api_fail(404, "not_found", "no live slice " + sid, Json{{"slice", sid}});

  std::optional<Slice> t;
  std::vector<Slice> templates = complemented_slices(*sl);
  if (req.contains("arc")) {
    std::size_t j = read_size(req, "arc", 0);
    if (j >= sl->arcs().size() || !sl->arcs()[j].expr.is_cmpl_slice())
      api_fail(409, "illegal_choice", "arc " + std::to_string(j) + " is not a complemented slice",
               Json{{"slice", sid}, {"arc", j}});
    t = sl->arcs()[j].expr.operand().slice();
  } else if (req.contains("template")) {
    std::size_t k = read_size(req, "template", 0);
    if (k >= templates.size())
      api_fail(409, "illegal_choice", "no template " + std::to_string(k), Json{{"slice", sid}, {"template", k}});
    t = templates[k];
  } else if (req.contains("t")) {
    try {
      t = slice_from_json(req.at("t"));
    } catch (const Error& e) {
      api_fail(400, "bad_request", e.what());
    }
    // any basic slice may be instantiated; the templates are only suggestions
    if (!is_basic(*t)) api_fail(409, "illegal_choice", "expansion slices must be basic", Json{{"slice", sid}});
  } else {
    api_fail(400, "bad_request", "expansion needs \"arc\", \"template\" or \"t\"");
  }

  NameList v;
  try {
    v = names_from_json(req.contains("v") ? req.at("v") : Json::array());
  } catch (const Error& e) {
    api_fail(400, "bad_request", e.what());
  }
  if (v.size() != t->arity())
    api_fail(409, "illegal_choice", "tuple length " + std::to_string(v.size()) + " but the slice has arity " +
                                        std::to_string(t->arity()),
             Json{{"slice", sid}});
  for (const Name& n : v)
    if (!sl->under().has_node(n))
      api_fail(409, "illegal_choice", n.text() + " is not a node of slice " + sid, Json{{"slice", sid}});

  Expansion x = grefute::expand(*sl, *t, v);
  auto next = std::make_shared<SessionState>(*cur);
  const std::size_t first = next->trace.events.size();
  const std::string lid = sid + ".0", rid = sid + ".1";
  next->trace.events.push_back({DerivationEvent::Kind::Expand, sid, *t, v, {lid, rid}, {}, {}});
  LabelledSlices out;
  for (auto& [id, s2] : next->slices)
    if (id != sid) out.emplace_back(id, s2);
  for (const auto& [cid, child] : {std::pair{lid, x.glued}, std::pair{rid, x.complemented}}) {
    if (auto w = is_zero_slice(child)) {
      next->trace.events.push_back({DerivationEvent::Kind::Erase, cid, {}, {}, {}, *w, {}});
    } else {
      out.emplace_back(cid, child);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  next->slices = std::move(out);
  if (next->slices.empty()) {
    next->status = SessionStatus::Refuted;
  } else {
    for (const auto& [cid, child] : next->slices) {
      if (cid != lid && cid != rid) continue;
      if (auto m = extract_countermodel(child)) {
        next->trace.events.push_back({DerivationEvent::Kind::Saturate, cid, {}, {}, {}, {}, {}});
        next->status = SessionStatus::Saturated;
        next->model = std::move(m);
        next->saturated_slice = cid;
        break;
      }
    }
  }
  Json delta = make_delta(*cur, *next, first);
  journal(next->id, Json{{"op", "events"}, {"events", delta["events"]}, {"status", delta["status"]}});
  s.publish(next);
  return delta;
}

Json Service::auto_step(Session& s, const Json& req) {
  std::lock_guard lock(s.mutate);
  auto cur = s.get();
  if (cur->status != SessionStatus::Open)
    api_fail(409, "conflict", "session is " + status_name(cur->status));
  if (!req.is_object()) api_fail(400, "bad_request", "expected a JSON object");
  Budget b;
  b.max_expansions = read_size(req, "maxExpansions", b.max_expansions);
  b.max_slice_nodes = read_size(req, "maxSliceNodes", b.max_slice_nodes);
  if (req.contains("maxWallTime")) {
    if (!req.at("maxWallTime").is_number() || req.at("maxWallTime").get<double>() < 0)
      api_fail(400, "bad_request", "\"maxWallTime\" must be a non-negative number");
    b.max_wall_time = req.at("maxWallTime").get<double>();
  }
  if (b.max_expansions == 0 || b.max_wall_time == 0) return make_delta(*cur, *cur, cur->trace.events.size());

  Verdict v = prove_slices(cur->slices, b);
  auto next = std::make_shared<SessionState>(*cur);
  const std::size_t first = next->trace.events.size();
  for (const DerivationEvent& e : v.trace.events) next->trace.events.push_back(e);
  next->slices = replay_derivation(cur->slices, v.trace.events);
  switch (v.kind) {
    case VerdictKind::Null:
      next->status = SessionStatus::Refuted;
      break;
    case VerdictKind::NotNull:
      next->status = SessionStatus::Saturated;
      next->model = v.model;
      next->saturated_slice = v.open_slice_id;
      break;
    case VerdictKind::Unknown:
      // budget stops leave the session open for another round; the node cap does not go away
      if (v.reason == "slice node limit reached") next->status = SessionStatus::Exhausted;
      break;
  }
  Json delta = make_delta(*cur, *next, first);
  delta["stats"] = to_json(v.stats);
  if (!v.reason.empty()) delta["reason"] = v.reason;
  journal(next->id, Json{{"op", "events"}, {"events", delta["events"]}, {"status", delta["status"]}});
  s.publish(next);
  return delta;
}

void Service::journal(const std::string& id, const Json& record) {
  if (!journal_) return;
  std::ofstream out(*journal_ / (id + ".jsonl"), std::ios::app);
  out << record.dump() << '\n';
}

void Service::reload() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(*journal_))
    if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string id = path.stem().string();
    std::ifstream in(path);
    std::string line;
    std::shared_ptr<SessionState> st;
    try {
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json rec = Json::parse(line);
        const std::string op = rec.at("op").get<std::string>();
        if (op == "create") {
          st = open_state(id, rec.at("premises").get<std::vector<std::string>>(),
                          rec.at("conclusion").get<std::string>());
        } else if (op == "events" && st) {
          std::vector<DerivationEvent> evs;
          for (const Json& e : rec.at("events")) evs.push_back(event_from_json(e));
          st->slices = replay_derivation(st->slices, evs);
          for (auto& e : evs) {
            if (e.kind == DerivationEvent::Kind::Saturate) {
              auto it = std::find_if(st->slices.begin(), st->slices.end(),
                                     [&](const auto& p) { return p.first == e.slice; });
              if (it != st->slices.end()) {
                st->model = extract_countermodel(it->second);
                st->saturated_slice = e.slice;
              }
            }
            st->trace.events.push_back(std::move(e));
          }
          st->status = status_from_name(rec.at("status").get<std::string>());
        }
      }
    } catch (const std::exception&) {
      // a torn or foreign journal is skipped rather than trusted
      continue;
    }
    if (!st) continue;
    auto session = std::make_shared<Session>();
    session->publish(st);
    sessions_.emplace(id, session);
    if (id.size() > 1 && id[0] == 's' && std::all_of(id.begin() + 1, id.end(), ::isdigit))
      next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
  }
}

HttpReply Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  auto reply = [](int status, const Json& j) { return HttpReply{status, "application/json", j.dump()}; };
  try {
    std::vector<std::string> parts = split_path(path);
    auto parse_body = [&]() -> Json {
      if (body.empty()) return Json::object();
      try {
        return Json::parse(body);
      } catch (const Json::parse_error& e) {
        api_fail(400, "bad_json", e.what(), Json{{"offset", e.byte}});
      }
    };
    if (parts.empty() || parts[0] != "sessions") api_fail(404, "not_found", "no route " + path);
    if (parts.size() == 1) {
      if (method == "POST") return reply(201, create(parse_body()));
      if (method == "GET") {
        Json ids = Json::array();
        std::shared_lock lock(map_mutex_);
        for (const auto& [id, s] : sessions_) ids.push_back(Json{{"id", id}, {"status", status_name(s->get()->status)}});
        return reply(200, ids);
      }
      api_fail(405, "method_not_allowed", method + " " + path);
    }
    auto session = find(parts[1]);
    const std::string what = parts.size() == 2 ? "graph" : parts[2];
    if (parts.size() > 3) api_fail(404, "not_found", "no route " + path);
    if (method == "GET") {
      auto st = session->get();
      if (what == "graph") return reply(200, session_view(*st));
      if (what == "trace") return reply(200, Json{{"id", st->id}, {"trace", to_json(st->trace)}});
      if (what == "render") {
        std::vector<Slice> ss;
        for (const auto& [id, s] : st->slices) ss.push_back(s);
        return HttpReply{200, "text/vnd.graphviz", render_dot(Graph(0, ss))};
      }
    } else if (method == "POST") {
      if (what == "expand") return reply(200, expand(*session, parse_body()));
      if (what == "auto") return reply(200, auto_step(*session, parse_body()));
    }
    static const std::set<std::string> known = {"graph", "trace", "render", "expand", "auto"};
    if (known.count(what)) api_fail(405, "method_not_allowed", method + " " + path);
    api_fail(404, "not_found", "no route " + method + " " + path);
  } catch (const ApiError& e) {
    return reply(e.status, error_body(e));
  } catch (const BudgetExceeded& e) {
    return reply(422, Json{{"code", "budget_exceeded"}, {"message", e.what()}});
  } catch (const Error& e) {
    return reply(400, Json{{"code", "bad_request"}, {"message", e.what()}});
  } catch (const Json::exception& e) {
    return reply(400, Json{{"code", "bad_request"}, {"message", e.what()}});
  }
}

}  // namespace grefute
