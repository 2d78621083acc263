#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lodex/Dataset.h"
#include "lodex/Term.h"

namespace lodex {

enum class IndexKind { Subject, Type, TypeSet, PropertySet, ECS, SchemEX };

inline constexpr IndexKind kAllIndexKinds[] = {
    IndexKind::Subject,     IndexKind::Type, IndexKind::TypeSet,
    IndexKind::PropertySet, IndexKind::ECS,  IndexKind::SchemEX};

// Lower-case identifiers used on the command line and in file names.
std::string_view toString(IndexKind kind);
std::optional<IndexKind> parseIndexKind(std::string_view name);

// ---------------------------------------------------------------------------
// Keys
// ---------------------------------------------------------------------------

struct TermKey {
  RdfTerm term;
  auto operator<=>(const TermKey&) const = default;
  bool operator==(const TermKey&) const = default;
};

// A set of terms, kept sorted in canonical term order without duplicates.
class TermSetKey {
 public:
  TermSetKey() = default;
  explicit TermSetKey(std::vector<RdfTerm> terms);

  const std::vector<RdfTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool contains(const RdfTerm& t) const;

  auto operator<=>(const TermSetKey&) const = default;
  bool operator==(const TermSetKey&) const = default;

 private:
  std::vector<RdfTerm> terms_;
};

struct SchemexEdge {
  TermSetKey properties;
  TermSetKey targetTypes;
  auto operator<=>(const SchemexEdge&) const = default;
  bool operator==(const SchemexEdge&) const = default;
};

class SchemexKey {
 public:
  SchemexKey() = default;
  SchemexKey(TermSetKey types, std::vector<SchemexEdge> edges);

  const TermSetKey& types() const { return types_; }
  const std::vector<SchemexEdge>& edges() const { return edges_; }

  auto operator<=>(const SchemexKey&) const = default;
  bool operator==(const SchemexKey&) const = default;

 private:
  TermSetKey types_;
  std::vector<SchemexEdge> edges_;
};

using Key = std::variant<TermKey, TermSetKey, SchemexKey>;

// Injective, deterministic text form of a key:
//   TermKey    -> the N-Triples form of the term
//   TermSetKey -> {t1,t2,...}
//   SchemexKey -> ({types}|({ps}->{ts});({ps}->{ts}))
std::string canonicalKeyString(const Key& key);

// ---------------------------------------------------------------------------
// Data items
// ---------------------------------------------------------------------------

struct EntityUri {
  RdfTerm term;
  auto operator<=>(const EntityUri&) const = default;
  bool operator==(const EntityUri&) const = default;
};

struct ContextUri {
  RdfTerm term;
  auto operator<=>(const ContextUri&) const = default;
  bool operator==(const ContextUri&) const = default;
};

using DataItem = std::variant<Triple, EntityUri, ContextUri>;

std::string canonicalItemString(const DataItem& item);

// ---------------------------------------------------------------------------
// Index
// ---------------------------------------------------------------------------

struct BuildOptions {
  bool schemexStrict = false;
  bool excludeRdfTypeFromPropertySets = false;
};

// A materialized index: every key maps to a sorted, duplicate-free vector of
// data items. Only Type indices carry keys with empty extensions (classes
// declared via rdf:type rdfs:Class without instances).
class Index {
 public:
  using Extension = std::vector<DataItem>;
  using Entries = std::map<Key, Extension>;

  Index(IndexKind kind, std::string sourceSnapshotId, Entries entries)
      : kind_(kind),
        sourceSnapshotId_(std::move(sourceSnapshotId)),
        entries_(std::move(entries)) {}

  IndexKind kind() const { return kind_; }
  const std::string& sourceSnapshotId() const { return sourceSnapshotId_; }
  const Entries& entries() const { return entries_; }
  std::size_t keyCount() const { return entries_.size(); }

  // Returns the extension of `key` (empty when absent). Throws KindMismatch
  // if the key variant cannot occur in this kind of index.
  std::span<const DataItem> select(const Key& key) const;
  std::size_t extensionSize(const Key& key) const;
  std::vector<Key> keySet() const;
  bool isCompatible(const Key& key) const;

 private:
  IndexKind kind_;
  std::string sourceSnapshotId_;
  Entries entries_;
};

// Per-entity projections over the whole dataset.
std::vector<RdfTerm> entityTypeSet(const Dataset& d, const RdfTerm& subject);
std::vector<RdfTerm> entityPropertySet(const Dataset& d,
                                       const RdfTerm& subject);

// Throws EmptyDataset for a dataset without quads.
Index buildIndex(const Dataset& d, IndexKind kind,
                 const BuildOptions& opts = {});

// One `<key>\t<item>` line per pair, sorted bytewise. Keys without items
// are written with an empty item column.
std::vector<std::string> canonicalDump(const Index& index);

}  // namespace lodex
