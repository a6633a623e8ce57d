#include "flexq/knowledge.h"

#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "flexq/error.h"
#include "json.hpp"
#include "test_support.h"

namespace flexq {
namespace {

// Deterministic clock: 2026-01-01T00:00:00.001Z, .002Z, ...
KnowledgeStore::Clock ticking_clock() {
  auto n = std::make_shared<int>(0);
  return [n] {
    char buf[40];
    std::snprintf(buf, sizeof buf, "2026-01-01T00:00:00.%03dZ", ++*n);
    return std::string(buf);
  };
}

ResolvedQuery sample_rq(const std::string& table) {
  ResolvedQuery rq;
  rq.base_table = {table, table, BindMethod::kFuzzy, 1};
  rq.conditions.push_back({table, {"city", "city", BindMethod::kExact, 0}, CompareOp::kEq, {"London", false}});
  rq.trace.push_back({"table", table, "fuzzy"});
  return rq;
}

TEST(NormalizeTest, Cases) {
  EXPECT_EQ(normalize_query("  List  Supplier details where city is equal to London. "),
            "list supplier details where city is equal to london");
  EXPECT_EQ(normalize_query("a?!"), "a");
  EXPECT_EQ(normalize_query(normalize_query("X  y.")), normalize_query("X  y."));
  try {
    normalize_query(" ..? ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyAfterNormalization);
  }
}

TEST(VerdictTest, Parse) {
  EXPECT_EQ(parse_verdict("accept"), Verdict::kAccept);
  EXPECT_EQ(parse_verdict("reject"), Verdict::kReject);
  try {
    parse_verdict("maybe");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadVerdict);
  }
}

TEST(TimestampTest, Shape) {
  std::string ts = utc_timestamp();
  ASSERT_EQ(ts.size(), 24u);
  EXPECT_EQ(ts[10], 'T');
  EXPECT_EQ(ts.back(), 'Z');
}

TEST(KnowledgeStoreTest, RecordLookupFeedback) {
  KnowledgeStore kb(std::nullopt, ticking_clock());
  EXPECT_FALSE(kb.lookup("k"));
  std::string id = kb.record("k", {"SELECT 1"}, sample_rq("t"));
  EXPECT_EQ(id, "e1");
  EXPECT_EQ(kb.record("k", {"SELECT 1"}, sample_rq("t")), "e1");
  EXPECT_EQ(kb.record("k", {"SELECT 2"}, sample_rq("u")), "e2");
  EXPECT_FALSE(kb.lookup("k"));  // pending entries are not served

  KnowledgeEntry e = kb.feedback("e1", Verdict::kAccept, "looks right");
  EXPECT_EQ(e.status, EntryStatus::kAccepted);
  EXPECT_EQ(e.accepts, 1);
  EXPECT_EQ(e.notes, std::vector<std::string>{"looks right"});
  EXPECT_EQ(e.created_at, "2026-01-01T00:00:00.001Z");
  EXPECT_EQ(e.updated_at, "2026-01-01T00:00:00.003Z");
  ASSERT_TRUE(kb.lookup("k"));
  EXPECT_EQ(kb.lookup("k")->id, "e1");
  EXPECT_EQ(kb.lookup("k")->resolved, sample_rq("t"));

  // History wins: one reject on an accepted entry keeps it accepted.
  e = kb.feedback("e1", Verdict::kReject);
  EXPECT_EQ(e.status, EntryStatus::kAccepted);
  EXPECT_EQ(e.rejects, 1);

  EXPECT_EQ(kb.feedback("e2", Verdict::kReject).status, EntryStatus::kRejected);
  EXPECT_EQ(kb.blocked_sql("k"), std::set<std::string>{"SELECT 2"});
  EXPECT_TRUE(kb.blocked_sql("other").empty());

  try {
    kb.feedback("e99", Verdict::kAccept);
    FAIL();
  } catch (const Error& e2) {
    EXPECT_EQ(e2.kind(), ErrorKind::kUnknownEntry);
  }
}

TEST(KnowledgeStoreTest, LookupPrefersMostAcceptedThenRecent) {
  KnowledgeStore kb(std::nullopt, ticking_clock());
  kb.record("k", {"A"}, sample_rq("a"));
  kb.record("k", {"B"}, sample_rq("b"));
  kb.feedback("e1", Verdict::kAccept);
  kb.feedback("e2", Verdict::kAccept);
  EXPECT_EQ(kb.lookup("k")->id, "e2");
  kb.feedback("e1", Verdict::kAccept);
  EXPECT_EQ(kb.lookup("k")->id, "e1");
}

TEST(KnowledgeStoreTest, JournalRoundTrip) {
  testing::TempDir dir;
  auto path = dir / "kb.jsonl";
  std::vector<KnowledgeEntry> before;
  {
    KnowledgeStore kb(path, ticking_clock());
    kb.record("k", {"SELECT 1"}, sample_rq("t"));
    kb.record("j", {"SELECT 2"}, sample_rq("u"));
    kb.feedback("e1", Verdict::kAccept, "ok");
    kb.feedback("e2", Verdict::kReject);
    before = kb.all();
  }
  KnowledgeStore again(path, ticking_clock());
  EXPECT_EQ(again.all(), before);
  EXPECT_EQ(again.lookup("k")->id, "e1");
  EXPECT_EQ(again.blocked_sql("j"), std::set<std::string>{"SELECT 2"});
  // New ids continue after the replayed ones.
  EXPECT_EQ(again.record("z", {"SELECT 3"}, sample_rq("v")), "e3");

  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    auto ev = nlohmann::json::parse(line);
    EXPECT_TRUE(ev.contains("event") && ev.contains("payload") && ev.contains("ts"));
    ++lines;
  }
  EXPECT_EQ(lines, 5);
}

TEST(KnowledgeStoreTest, TornTailIsIgnoredCorruptionIsNot) {
  testing::TempDir dir;
  {
    KnowledgeStore kb(dir / "kb.jsonl", ticking_clock());
    kb.record("k", {"SELECT 1"}, sample_rq("t"));
  }
  {
    std::ofstream(dir / "kb.jsonl", std::ios::app) << "{\"event\":\"feedb";
  }
  KnowledgeStore torn(dir / "kb.jsonl", ticking_clock());
  EXPECT_EQ(torn.all().size(), 1u);

  dir.write("bad.jsonl", "not json\n{\"event\":\"record\"}\n");
  try {
    KnowledgeStore bad(dir / "bad.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStorageIo);
  }
}

TEST(KnowledgeStoreTest, UnwritableJournalFails) {
  KnowledgeStore kb(std::filesystem::path("/nonexistent-dir/kb.jsonl"));
  try {
    kb.record("k", {"SELECT 1"}, sample_rq("t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStorageIo);
  }
  EXPECT_TRUE(kb.all().empty());
}

TEST(KnowledgeStoreTest, ConcurrentWritersKeepIdsUnique) {
  testing::TempDir dir;
  KnowledgeStore kb(dir / "kb.jsonl");
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 25; ++i) {
        std::string id = kb.record("k" + std::to_string(t), {"S" + std::to_string(i)}, sample_rq("t"));
        kb.feedback(id, i % 2 ? Verdict::kAccept : Verdict::kReject);
        (void)kb.lookup("k0");
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(kb.all().size(), 100u);
  KnowledgeStore replayed(dir / "kb.jsonl");
  EXPECT_EQ(replayed.all(), kb.all());
}

}  // namespace
}  // namespace flexq
