#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "flexq/resolver.h"
#include "flexq/sqlgen.h"

namespace flexq {

enum class Verdict { kAccept, kReject };
enum class EntryStatus { kPending, kAccepted, kRejected };

std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view s);  // throws Error(kBadVerdict)
std::string_view status_name(EntryStatus s);

struct KnowledgeEntry {
  std::string id;
  std::string key;
  SqlText sql;
  ResolvedQuery resolved;
  int accepts = 0;
  int rejects = 0;
  EntryStatus status = EntryStatus::kPending;
  std::string created_at;
  std::string updated_at;
  std::vector<std::string> notes;  // free-text feedback, kept verbatim

  bool operator==(const KnowledgeEntry&) const = default;
};

// Lowercase, strip terminal punctuation, collapse whitespace.
// Throws Error(kEmptyAfterNormalization).
std::string normalize_query(std::string_view raw);

// Current UTC time as 2026-01-31T12:00:00.123Z.
std::string utc_timestamp();

// Past translations with their accept/reject tallies, persisted as an
// append-only JSON-lines journal. State is the fold of the journal; a store
// without a path lives only in memory. Mutations are serialized by one
// writer lock, reads share it.
class KnowledgeStore {
 public:
  using Clock = std::function<std::string()>;

  explicit KnowledgeStore(std::optional<std::filesystem::path> journal = std::nullopt,
                          Clock clock = utc_timestamp);

  KnowledgeStore(const KnowledgeStore&) = delete;
  KnowledgeStore& operator=(const KnowledgeStore&) = delete;

  // Best accepted entry for key: most accepts, then most recently updated.
  std::optional<KnowledgeEntry> lookup(const std::string& key) const;
  // SQL texts of rejected entries for key.
  std::set<std::string> blocked_sql(const std::string& key) const;

  // Pending entry for (key, sql), or the id of the existing one.
  std::string record(const std::string& key, const SqlText& sql, const ResolvedQuery& resolved);
  KnowledgeEntry feedback(const std::string& id, Verdict verdict, const std::string& note = {});

  std::optional<KnowledgeEntry> find(const std::string& id) const;
  std::vector<KnowledgeEntry> entries_for(const std::string& key) const;
  std::vector<KnowledgeEntry> all() const;

  const std::optional<std::filesystem::path>& journal_path() const { return journal_; }

 private:
  struct Slot {
    KnowledgeEntry entry;
    size_t last_touch = 0;  // journal sequence of the last event
  };

  void replay();
  void apply_record(const std::string& id, const std::string& key, const SqlText& sql,
                    const ResolvedQuery& resolved, const std::string& ts);
  KnowledgeEntry apply_feedback(const std::string& id, Verdict verdict, const std::string& note,
                                const std::string& ts);
  void append_line(const std::string& line);

  std::optional<std::filesystem::path> journal_;
  Clock clock_;
  mutable std::shared_mutex mu_;
  std::vector<Slot> slots_;                  // creation order
  std::map<std::string, size_t> by_id_;      // id -> slot
  size_t sequence_ = 0;
};

}  // namespace flexq
