/// @file risk_study.cc

#include "atgen/risk_study.h"

#include <set>

#include "atgen/error.h"
#include "text_util.h"

namespace atgen {

RiskStudy::RiskStudy(StudyData data) : data_(std::move(data)) {
  std::vector<std::string> issues;
  auto check_id = [&](const std::string& id, const char* what) {
    if (!detail::valid_id(id))
      issues.push_back(std::string("invalid ") + what + " id '" + id + "'");
  };
  for (std::size_t i = 0; i < data_.primary_assets.size(); ++i) {
    check_id(data_.primary_assets[i].id, "primary asset");
    if (!assets_.emplace(data_.primary_assets[i].id, i).second)
      issues.push_back("duplicate primary asset '" +
                       data_.primary_assets[i].id + "'");
  }
  for (const AssetTag& t : data_.tags)
    if (!tags_.emplace(t.component, t.type).second)
      issues.push_back("component '" + t.component + "' is tagged twice");
  for (std::size_t i = 0; i < data_.threat_sources.size(); ++i) {
    check_id(data_.threat_sources[i].id, "threat source");
    if (!sources_.emplace(data_.threat_sources[i].id, i).second)
      issues.push_back("duplicate threat source '" +
                       data_.threat_sources[i].id + "'");
  }
  for (std::size_t i = 0; i < data_.feared_events.size(); ++i) {
    check_id(data_.feared_events[i].id, "feared event");
    if (!events_.emplace(data_.feared_events[i].id, i).second)
      issues.push_back("duplicate feared event '" +
                       data_.feared_events[i].id + "'");
  }
  if (!issues.empty())
    throw ValidationError("invalid risk study", std::move(issues));
}

const PrimaryAsset* RiskStudy::primary_asset(std::string_view id) const {
  auto it = assets_.find(std::string(id));
  return it == assets_.end() ? nullptr : &data_.primary_assets[it->second];
}

std::vector<const PrimaryAsset*> RiskStudy::primary_assets_named(
    std::string_view name) const {
  std::vector<const PrimaryAsset*> exact, folded;
  for (const PrimaryAsset& a : data_.primary_assets) {
    if (a.name == name) exact.push_back(&a);
    else if (detail::iequals(a.name, name)) folded.push_back(&a);
  }
  return exact.empty() ? folded : exact;
}

const std::string* RiskStudy::tag_of(std::string_view component) const {
  auto it = tags_.find(std::string(component));
  return it == tags_.end() ? nullptr : &it->second;
}

const ThreatSource* RiskStudy::threat_source(std::string_view id) const {
  auto it = sources_.find(std::string(id));
  return it == sources_.end() ? nullptr : &data_.threat_sources[it->second];
}

const FearedEventDecl* RiskStudy::feared_event(std::string_view id) const {
  auto it = events_.find(std::string(id));
  return it == events_.end() ? nullptr : &data_.feared_events[it->second];
}

std::optional<std::size_t> RiskStudy::severity_rank(
    std::string_view label) const {
  for (std::size_t i = 0; i < data_.severity_scale.size(); ++i)
    if (data_.severity_scale[i] == label) return i;
  return std::nullopt;
}

bool RiskStudy::severity_less(std::string_view a, std::string_view b) const {
  auto ra = severity_rank(a);
  auto rb = severity_rank(b);
  return ra && rb && *ra < *rb;
}

namespace {

constexpr std::string_view kLead = "loss of ";
constexpr std::string_view kOfThe = " of the ";
constexpr std::string_view kOnThe = " on the ";

/// Offsets of every case-insensitive occurrence of needle in hay.
std::vector<std::size_t> occurrences(std::string_view hay,
                                     std::string_view needle) {
  std::vector<std::size_t> out;
  if (hay.size() < needle.size()) return out;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i)
    if (detail::iequals(hay.substr(i, needle.size()), needle))
      out.push_back(i);
  return out;
}

std::string_view trim(std::string_view s, std::size_t* lead) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  *lead = b;
  return s.substr(b, e - b);
}

}  // namespace

FearedEvent parse_feared_event(std::string_view text,
                               const ArchitectureModel& model,
                               const RiskStudy& study,
                               const KnowledgeBase& kb) {
  std::size_t base = 0;
  std::string_view s = trim(text, &base);
  if (!s.empty() && s.back() == '.') s.remove_suffix(1);
  if (s.size() < kLead.size() ||
      !detail::iequals(s.substr(0, kLead.size()), kLead))
    throw ParseError("feared event must start with 'Loss of'", base);

  std::string_view body = s.substr(kLead.size());
  std::size_t body_at = base + kLead.size();
  std::vector<std::size_t> ofs = occurrences(body, kOfThe);
  if (ofs.empty())
    throw ParseError("expected 'of the' after the security criterion",
                     base + s.size());

  struct Split {
    std::string_view criterion, asset, entity;
  };
  std::vector<Split> splits;
  for (std::size_t of : ofs) {
    std::string_view rest = body.substr(of + kOfThe.size());
    for (std::size_t on : occurrences(rest, kOnThe)) {
      Split sp{body.substr(0, of), rest.substr(0, on),
               rest.substr(on + kOnThe.size())};
      if (!sp.criterion.empty() && !sp.asset.empty() && !sp.entity.empty())
        splits.push_back(sp);
    }
  }
  if (splits.empty())
    throw ParseError("expected 'on the <operational entity>'",
                     body_at + ofs.front() + kOfThe.size());

  // Keep the splits whose three names resolve; report the first stage at
  // which every split fails.
  std::vector<FearedEvent> matches;
  std::vector<std::string> ambiguity;
  bool any_criterion = false, any_asset = false;
  for (const Split& sp : splits) {
    const SecurityCriterion* c = kb.criterion_named(sp.criterion);
    if (!c) continue;
    any_criterion = true;
    auto assets = study.primary_assets_named(sp.asset);
    if (assets.empty()) continue;
    any_asset = true;
    auto entities = model.entities_named(sp.entity);
    if (entities.empty()) continue;
    if (assets.size() > 1 || entities.size() > 1) {
      std::string msg = "ambiguous name in feared event; candidates:";
      for (auto* a : assets) msg += " " + a->id;
      for (auto* e : entities) msg += " " + e->id;
      ambiguity.push_back(msg);
      continue;
    }
    FearedEvent ev;
    ev.criterion = c->id;
    ev.primary_asset = assets.front()->id;
    ev.process = assets.front()->process;
    ev.entity = entities.front()->id;
    matches.push_back(std::move(ev));
  }
  if (matches.size() == 1) return matches.front();
  if (matches.size() > 1)
    throw ResolutionError("ambiguous feared event sentence: '" +
                          std::string(s) + "'");
  if (!ambiguity.empty()) throw ResolutionError(ambiguity.front());

  auto list = [](std::vector<std::string> names) {
    return detail::join(names, ", ");
  };
  if (!any_criterion) {
    std::vector<std::string> known;
    for (const auto& c : kb.data().criteria) known.push_back(c.name);
    throw ResolutionError("criterion not in KB: '" +
                          std::string(splits.front().criterion) +
                          "'; candidates: " + list(known));
  }
  if (!any_asset) {
    std::vector<std::string> known;
    for (const auto& a : study.data().primary_assets) known.push_back(a.name);
    throw ResolutionError("unknown primary asset '" +
                          std::string(splits.front().asset) +
                          "'; candidates: " + list(known));
  }
  std::vector<std::string> known;
  for (const auto& e : model.data().entities) known.push_back(e.name);
  throw ResolutionError("unknown operational entity '" +
                        std::string(splits.back().entity) +
                        "'; candidates: " + list(known));
}

std::string format_feared_event(const FearedEvent& event,
                                const ArchitectureModel& model,
                                const RiskStudy& study,
                                const KnowledgeBase& kb) {
  const SecurityCriterion* c = kb.criterion(event.criterion);
  const PrimaryAsset* a = study.primary_asset(event.primary_asset);
  const OperationalEntity* e = model.entity(event.entity);
  if (!c || !a || !e)
    throw ResolutionError("feared event " + event.id + " does not resolve");
  return "Loss of " + c->name + " of the " + a->name + " on the " + e->name;
}

FearedEvent resolve_feared_event(std::string_view id,
                                 const ArchitectureModel& model,
                                 const RiskStudy& study,
                                 const KnowledgeBase& kb) {
  const FearedEventDecl* decl = study.feared_event(id);
  if (!decl) throw ResolutionError("unknown feared event: " + std::string(id));
  FearedEvent ev = parse_feared_event(decl->text, model, study, kb);
  ev.id = decl->id;
  ev.severity = decl->severity;
  return ev;
}

std::vector<Diagnostic> validate_study(const RiskStudy& study,
                                       const ArchitectureModel& model,
                                       const KnowledgeBase& kb) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string code, std::string msg) {
    out.push_back({Diagnostic::Severity::kError, std::move(code),
                   std::move(msg)});
  };
  const StudyData& d = study.data();

  if (d.severity_scale.empty())
    error("severity-scale", "severity scale is empty");
  std::set<std::string> labels;
  for (const std::string& l : d.severity_scale)
    if (!labels.insert(l).second)
      error("severity-scale", "severity label '" + l + "' is repeated");

  for (const PrimaryAsset& a : d.primary_assets)
    if (!model.process(a.process))
      error("dangling-reference", "primary asset " + a.id + " maps to unknown "
                                  "process '" + a.process + "'");

  for (const AssetTag& t : d.tags) {
    if (!model.component(t.component))
      out.push_back({Diagnostic::Severity::kWarning, "dangling-reference",
                     "tag on unknown component '" + t.component + "'"});
    if (!kb.asset_type(t.type))
      error("dangling-reference", "component " + t.component +
                                  " tagged with unknown type '" + t.type + "'");
  }

  for (const ThreatSource& s : d.threat_sources) {
    if (!s.actor) continue;
    const OperationalEntity* e = model.entity(*s.actor);
    if (!e)
      error("dangling-reference", "threat source " + s.id +
                                  " names unknown actor '" + *s.actor + "'");
    else if (!e->is_actor)
      error("not-an-actor", "threat source " + s.id + " names entity '" +
                            *s.actor + "' which is not an actor");
  }

  for (const FearedEventDecl& fe : d.feared_events) {
    try {
      parse_feared_event(fe.text, model, study, kb);
    } catch (const Error& e) {
      error("feared-event", "feared event " + fe.id + ": " + e.what());
    }
    if (!study.severity_rank(fe.severity))
      error("severity-scale", "feared event " + fe.id +
                              " has severity '" + fe.severity +
                              "' outside the scale");
  }

  std::set<std::string> untagged;
  for (const FunctionalChain& ch : model.data().chains)
    for (const std::string& c : ch.components)
      if (!study.tag_of(c) && untagged.insert(c).second)
        error("untyped-asset", "chain participant '" + c + "' has no "
                               "supporting-asset type");
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const Diagnostic& d : diagnostics)
    if (d.severity == Diagnostic::Severity::kError) return true;
  return false;
}

}  // namespace atgen
