#include "flexq/knowledge.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>

#include "flexq/error.h"
#include "flexq/serialize.h"
#include "flexq/text.h"

namespace flexq {

using nlohmann::json;

std::string_view verdict_name(Verdict v) { return v == Verdict::kAccept ? "accept" : "reject"; }

Verdict parse_verdict(std::string_view s) {
  if (s == "accept") return Verdict::kAccept;
  if (s == "reject") return Verdict::kReject;
  throw Error(ErrorKind::kBadVerdict, "verdict must be \"accept\" or \"reject\", got '" + std::string(s) + "'");
}

std::string_view status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::kPending: return "pending";
    case EntryStatus::kAccepted: return "accepted";
    case EntryStatus::kRejected: return "rejected";
  }
  return "pending";
}

std::string normalize_query(std::string_view raw) {
  std::string s = join(split_whitespace(to_lower(raw)), " ");
  while (!s.empty() && (s.back() == '.' || s.back() == '?' || s.back() == '!' || s.back() == ';' ||
                        s.back() == ',' || s.back() == ' ')) {
    s.pop_back();
  }
  if (s.empty()) throw Error(ErrorKind::kEmptyAfterNormalization, "query is empty once normalized");
  return s;
}

std::string utc_timestamp() {
  using namespace std::chrono;
  auto now = system_clock::now();
  auto ms = duration_cast<milliseconds>(now.time_since_epoch()) % 1000;
  std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms.count()));
  return out;
}

KnowledgeStore::KnowledgeStore(std::optional<std::filesystem::path> journal, Clock clock)
    : journal_(std::move(journal)), clock_(std::move(clock)) {
  if (journal_) replay();
}

void KnowledgeStore::replay() {
  std::ifstream in(*journal_, std::ios::binary);
  if (!in) return;  // fresh store
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::istringstream lines(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json ev;
    try {
      ev = json::parse(line);
    } catch (const json::parse_error&) {
      // A torn final write has no newline; anything else is corruption.
      bool last_unterminated = lines.eof() && !text.empty() && text.back() != '\n';
      if (last_unterminated) break;
      throw Error(ErrorKind::kStorageIo,
                  journal_->string() + ": line " + std::to_string(lineno) + " is not valid JSON");
    }
    try {
      const std::string event = ev.at("event").get<std::string>();
      const json& p = ev.at("payload");
      const std::string ts = ev.at("ts").get<std::string>();
      if (event == "record") {
        apply_record(p.at("id").get<std::string>(), p.at("key").get<std::string>(),
                     SqlText{p.at("sql").get<std::string>()}, p.at("resolved").get<ResolvedQuery>(), ts);
      } else if (event == "feedback") {
        apply_feedback(p.at("id").get<std::string>(), parse_verdict(p.at("verdict").get<std::string>()),
                       p.value("note", std::string{}), ts);
      } else {
        throw Error(ErrorKind::kStorageIo, "unknown event '" + event + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kStorageIo,
                  journal_->string() + ": line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::kStorageIo,
                  journal_->string() + ": line " + std::to_string(lineno) + ": " + e.detail());
    }
  }
}

void KnowledgeStore::append_line(const std::string& line) {
  if (!journal_) return;
  std::ofstream out(*journal_, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorKind::kStorageIo, "cannot open journal " + journal_->string());
  out << line << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::kStorageIo, "write to journal " + journal_->string() + " failed");
}

void KnowledgeStore::apply_record(const std::string& id, const std::string& key, const SqlText& sql,
                                  const ResolvedQuery& resolved, const std::string& ts) {
  Slot slot;
  slot.entry.id = id;
  slot.entry.key = key;
  slot.entry.sql = sql;
  slot.entry.resolved = resolved;
  slot.entry.created_at = ts;
  slot.entry.updated_at = ts;
  slot.last_touch = ++sequence_;
  by_id_[id] = slots_.size();
  slots_.push_back(std::move(slot));
}

KnowledgeEntry KnowledgeStore::apply_feedback(const std::string& id, Verdict verdict,
                                              const std::string& note, const std::string& ts) {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw Error(ErrorKind::kUnknownEntry, "no entry with id '" + id + "'");
  Slot& slot = slots_[it->second];
  KnowledgeEntry& e = slot.entry;
  if (verdict == Verdict::kAccept) {
    ++e.accepts;
    e.status = EntryStatus::kAccepted;
  } else {
    ++e.rejects;
    if (e.accepts == 0) e.status = EntryStatus::kRejected;
  }
  if (!note.empty()) e.notes.push_back(note);
  e.updated_at = ts;
  slot.last_touch = ++sequence_;
  return e;
}

std::optional<KnowledgeEntry> KnowledgeStore::lookup(const std::string& key) const {
  std::shared_lock lock(mu_);
  const Slot* best = nullptr;
  for (const auto& s : slots_) {
    if (s.entry.key != key || s.entry.status != EntryStatus::kAccepted) continue;
    if (!best || s.entry.accepts > best->entry.accepts ||
        (s.entry.accepts == best->entry.accepts && s.last_touch > best->last_touch)) {
      best = &s;
    }
  }
  if (!best) return std::nullopt;
  return best->entry;
}

std::set<std::string> KnowledgeStore::blocked_sql(const std::string& key) const {
  std::shared_lock lock(mu_);
  std::set<std::string> out;
  for (const auto& s : slots_) {
    if (s.entry.key == key && s.entry.status == EntryStatus::kRejected) out.insert(s.entry.sql.text);
  }
  return out;
}

std::string KnowledgeStore::record(const std::string& key, const SqlText& sql, const ResolvedQuery& resolved) {
  std::unique_lock lock(mu_);
  for (const auto& s : slots_) {
    if (s.entry.key == key && s.entry.sql.text == sql.text) return s.entry.id;
  }
  std::string id = "e" + std::to_string(slots_.size() + 1);
  std::string ts = clock_();
  json ev{{"event", "record"},
          {"payload", {{"id", id}, {"key", key}, {"sql", sql.text}, {"resolved", resolved}}},
          {"ts", ts}};
  append_line(ev.dump());
  apply_record(id, key, sql, resolved, ts);
  return id;
}

KnowledgeEntry KnowledgeStore::feedback(const std::string& id, Verdict verdict, const std::string& note) {
  std::unique_lock lock(mu_);
  if (!by_id_.count(id)) throw Error(ErrorKind::kUnknownEntry, "no entry with id '" + id + "'");
  std::string ts = clock_();
  json payload{{"id", id}, {"verdict", verdict_name(verdict)}};
  if (!note.empty()) payload["note"] = note;
  append_line(json{{"event", "feedback"}, {"payload", payload}, {"ts", ts}}.dump());
  return apply_feedback(id, verdict, note, ts);
}

std::optional<KnowledgeEntry> KnowledgeStore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return slots_[it->second].entry;
}

std::vector<KnowledgeEntry> KnowledgeStore::entries_for(const std::string& key) const {
  std::shared_lock lock(mu_);
  std::vector<KnowledgeEntry> out;
  for (const auto& s : slots_) {
    if (s.entry.key == key) out.push_back(s.entry);
  }
  return out;
}

std::vector<KnowledgeEntry> KnowledgeStore::all() const {
  std::shared_lock lock(mu_);
  std::vector<KnowledgeEntry> out;
  for (const auto& s : slots_) out.push_back(s.entry);
  return out;
}

}  // namespace flexq
