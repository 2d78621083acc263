#include "lodex/Index.h"

#include <algorithm>

#include "lodex/Error.h"

namespace lodex {

std::string_view toString(IndexKind kind) {
  switch (kind) {
    case IndexKind::Subject: return "subject";
    case IndexKind::Type: return "type";
    case IndexKind::TypeSet: return "typeset";
    case IndexKind::PropertySet: return "propertyset";
    case IndexKind::ECS: return "ecs";
    case IndexKind::SchemEX: return "schemex";
  }
  return "unknown";
}

std::optional<IndexKind> parseIndexKind(std::string_view name) {
  for (IndexKind k : kAllIndexKinds) {
    if (toString(k) == name) return k;
  }
  return std::nullopt;
}

template <typename T>
static void sortUnique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

TermSetKey::TermSetKey(std::vector<RdfTerm> terms) : terms_(std::move(terms)) {
  sortUnique(terms_);
}

bool TermSetKey::contains(const RdfTerm& t) const {
  return std::binary_search(terms_.begin(), terms_.end(), t);
}

SchemexKey::SchemexKey(TermSetKey types, std::vector<SchemexEdge> edges)
    : types_(std::move(types)), edges_(std::move(edges)) {
  sortUnique(edges_);
}

namespace {

void appendSet(std::string& out, const TermSetKey& set) {
  out += '{';
  bool first = true;
  for (const auto& t : set.terms()) {
    if (!first) out += ',';
    first = false;
    out += toNTriples(t);
  }
  out += '}';
}

}  // namespace

std::string canonicalKeyString(const Key& key) {
  std::string out;
  std::visit(
      [&out](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TermKey>) {
          out = toNTriples(k.term);
        } else if constexpr (std::is_same_v<K, TermSetKey>) {
          appendSet(out, k);
        } else {
          out += '(';
          appendSet(out, k.types());
          out += '|';
          bool first = true;
          for (const auto& e : k.edges()) {
            if (!first) out += ';';
            first = false;
            out += '(';
            appendSet(out, e.properties);
            out += "->";
            appendSet(out, e.targetTypes);
            out += ')';
          }
          out += ')';
        }
      },
      key);
  return out;
}

std::string canonicalItemString(const DataItem& item) {
  return std::visit(
      [](const auto& i) -> std::string {
        using I = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<I, Triple>) {
          return toNTriples(i);
        } else {
          return toNTriples(i.term);
        }
      },
      item);
}

bool Index::isCompatible(const Key& key) const {
  switch (kind_) {
    case IndexKind::Subject:
    case IndexKind::Type:
      return std::holds_alternative<TermKey>(key);
    case IndexKind::TypeSet:
    case IndexKind::PropertySet:
    case IndexKind::ECS:
      return std::holds_alternative<TermSetKey>(key);
    case IndexKind::SchemEX:
      return std::holds_alternative<SchemexKey>(key);
  }
  return false;
}

std::span<const DataItem> Index::select(const Key& key) const {
  if (!isCompatible(key)) {
    throw KindMismatch("key " + canonicalKeyString(key) +
                       " cannot occur in a " + std::string(toString(kind_)) +
                       " index");
  }
  auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  return it->second;
}

std::size_t Index::extensionSize(const Key& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.size();
}

std::vector<Key> Index::keySet() const {
  std::vector<Key> keys;
  keys.reserve(entries_.size());
  for (const auto& [k, items] : entries_) keys.push_back(k);
  return keys;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace {

struct Profile {
  const RdfTerm* subject;
  std::size_t begin, end;  // statement range in Dataset::quads()
  std::vector<RdfTerm> types;
  std::vector<RdfTerm> properties;
  std::vector<RdfTerm> contexts;
};

// Subject profiles in subject order, computed in one pass over the sorted
// quads.
class Profiles {
 public:
  Profiles(const Dataset& d, bool excludeRdfType) {
    const auto& quads = d.quads();
    std::size_t i = 0;
    while (i < quads.size()) {
      Profile prof{&quads[i].s, i, i, {}, {}, {}};
      std::size_t j = i;
      while (j < quads.size() && quads[j].s == quads[i].s) {
        const Quad& q = quads[j];
        bool typeStatement = isRdfType(q.p);
        if (typeStatement) prof.types.push_back(q.o);
        if (!(excludeRdfType && typeStatement) &&
            (prof.properties.empty() || !(prof.properties.back() == q.p))) {
          prof.properties.push_back(q.p);
        }
        prof.contexts.push_back(q.c);
        ++j;
      }
      prof.end = j;
      sortUnique(prof.types);
      sortUnique(prof.contexts);
      profiles_.push_back(std::move(prof));
      i = j;
    }
  }

  const std::vector<Profile>& all() const { return profiles_; }

  const Profile* find(const RdfTerm& subject) const {
    auto it = std::lower_bound(
        profiles_.begin(), profiles_.end(), subject,
        [](const Profile& p, const RdfTerm& s) { return *p.subject < s; });
    if (it == profiles_.end() || !(*it->subject == subject)) return nullptr;
    return &*it;
  }

  TermSetKey typesOf(const RdfTerm& t) const {
    const Profile* p = find(t);
    return p ? TermSetKey(p->types) : TermSetKey();
  }

 private:
  std::vector<Profile> profiles_;
};

std::vector<RdfTerm> unionOf(const std::vector<RdfTerm>& a,
                             const std::vector<RdfTerm>& b) {
  std::vector<RdfTerm> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

void buildSubject(const Dataset& d, Index::Entries& entries) {
  const auto& quads = d.quads();
  Index::Extension* current = nullptr;
  const RdfTerm* currentSubject = nullptr;
  for (const Quad& q : quads) {
    if (!currentSubject || !(*currentSubject == q.s)) {
      current = &entries[TermKey{q.s}];
      currentSubject = &q.s;
    }
    Triple t = q.triple();
    // Quads are sorted, so duplicate triples (other contexts) are adjacent.
    if (current->empty() || std::get<Triple>(current->back()) != t) {
      current->push_back(std::move(t));
    }
  }
}

void buildType(const Dataset& d, Index::Entries& entries) {
  for (const Quad& q : d.quads()) {
    if (!isRdfType(q.p)) continue;
    entries[TermKey{q.o}].push_back(EntityUri{q.s});
    if (q.o.kind == TermKind::Iri && q.o.lexical == vocab::kRdfsClass) {
      entries.try_emplace(TermKey{q.s});
    }
  }
}

void buildSchemex(const Dataset& d, const Profiles& profiles,
                  const BuildOptions& opts, Index::Entries& entries) {
  const auto& quads = d.quads();
  for (const Profile& prof : profiles.all()) {
    TermSetKey ts(prof.types);
    TermSetKey ps(prof.properties);
    if (!opts.schemexStrict) {
      std::vector<SchemexEdge> edges;
      for (std::size_t i = prof.begin; i < prof.end; ++i) {
        const Quad& q = quads[i];
        if (!q.o.isResource() || !ps.contains(q.p)) continue;
        edges.push_back({ps, profiles.typesOf(q.o)});
      }
      auto& ext = entries[SchemexKey(ts, std::move(edges))];
      for (const auto& c : prof.contexts) ext.push_back(ContextUri{c});
      continue;
    }
    // Strict reading: per context, an object qualifies only if it is reached
    // through every property of the subject's property set.
    for (const RdfTerm& c : prof.contexts) {
      std::vector<SchemexEdge> edges;
      if (!ps.empty()) {
        std::map<RdfTerm, std::size_t> reach;
        for (std::size_t i = prof.begin; i < prof.end; ++i) {
          const Quad& q = quads[i];
          if (q.c == c && q.o.isResource() && ps.contains(q.p)) ++reach[q.o];
        }
        for (const auto& [o, count] : reach) {
          if (count == ps.size()) edges.push_back({ps, profiles.typesOf(o)});
        }
      }
      entries[SchemexKey(ts, std::move(edges))].push_back(ContextUri{c});
    }
  }
}

}  // namespace

std::vector<RdfTerm> entityTypeSet(const Dataset& d, const RdfTerm& subject) {
  const auto& quads = d.quads();
  auto it = std::lower_bound(
      quads.begin(), quads.end(), subject,
      [](const Quad& q, const RdfTerm& s) { return q.s < s; });
  std::vector<RdfTerm> out;
  for (; it != quads.end() && it->s == subject; ++it) {
    if (isRdfType(it->p)) out.push_back(it->o);
  }
  sortUnique(out);
  return out;
}

std::vector<RdfTerm> entityPropertySet(const Dataset& d,
                                       const RdfTerm& subject) {
  const auto& quads = d.quads();
  auto it = std::lower_bound(
      quads.begin(), quads.end(), subject,
      [](const Quad& q, const RdfTerm& s) { return q.s < s; });
  std::vector<RdfTerm> out;
  for (; it != quads.end() && it->s == subject; ++it) out.push_back(it->p);
  sortUnique(out);
  return out;
}

Index buildIndex(const Dataset& d, IndexKind kind, const BuildOptions& opts) {
  if (d.empty()) {
    throw EmptyDataset("cannot build a " + std::string(toString(kind)) +
                       " index over empty snapshot '" + d.snapshotId() + "'");
  }
  Index::Entries entries;
  switch (kind) {
    case IndexKind::Subject:
      buildSubject(d, entries);
      break;
    case IndexKind::Type:
      buildType(d, entries);
      break;
    case IndexKind::TypeSet:
    case IndexKind::PropertySet:
    case IndexKind::ECS: {
      Profiles profiles(d, opts.excludeRdfTypeFromPropertySets);
      for (const Profile& prof : profiles.all()) {
        std::vector<RdfTerm> key;
        if (kind == IndexKind::TypeSet) {
          if (prof.types.empty()) continue;
          key = prof.types;
        } else if (kind == IndexKind::PropertySet) {
          key = prof.properties;
        } else {
          key = unionOf(prof.properties, prof.types);
        }
        entries[TermSetKey(std::move(key))].push_back(EntityUri{*prof.subject});
      }
      break;
    }
    case IndexKind::SchemEX: {
      Profiles profiles(d, opts.excludeRdfTypeFromPropertySets);
      buildSchemex(d, profiles, opts, entries);
      break;
    }
  }
  for (auto& [key, items] : entries) sortUnique(items);
  return Index(kind, d.snapshotId(), std::move(entries));
}

std::vector<std::string> canonicalDump(const Index& index) {
  std::vector<std::string> lines;
  for (const auto& [key, items] : index.entries()) {
    std::string k = canonicalKeyString(key);
    if (items.empty()) {
      lines.push_back(k + '\t');
      continue;
    }
    for (const auto& item : items) {
      lines.push_back(k + '\t' + canonicalItemString(item));
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace lodex
