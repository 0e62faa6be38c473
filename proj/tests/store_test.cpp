#include "polyclass/store.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include <gtest/gtest.h>

#include "support.hpp"

namespace polyclass {
namespace {

namespace fs = std::filesystem;

class StoreTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("polyclass-store-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

CanonicalForm form_of(const PolySystem& s) { return canonical_form_of_system(s).form; }

TEST_F(StoreTest, InsertIsIdempotent) {
  Store store(dir_);
  const PolySystem s = gen_cyclic(4);
  const InsertResult first = store.insert(form_of(s), s, "cyclic 4");
  EXPECT_TRUE(first.created);
  const InsertResult again = store.insert(form_of(s), s, "again");
  EXPECT_FALSE(again.created);
  EXPECT_EQ(again.key, first.key);
  EXPECT_EQ(store.stats().records, 1u);
  EXPECT_EQ(store.get(first.key)->note, "cyclic 4");
}

TEST_F(StoreTest, RecordFields) {
  Store store(dir_);
  const PolySystem s = parse_system("x^2 + x*y^2 - 3; 2*x^2*y + 5;");
  const CanonicalForm f = form_of(s);
  store.insert(f, s);
  const auto r = store.lookup(f);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->key, f.key);
  EXPECT_EQ(r->n_node_variable, 2);
  EXPECT_EQ(r->n_node_monomial, 5);
  EXPECT_EQ(r->n_node_equation, 2);
  EXPECT_EQ(r->n_node_degree, 5);
  EXPECT_EQ(r->n_degree, 6);
  EXPECT_EQ(r->degrees, "1,2");
  EXPECT_EQ(r->graph_length, static_cast<std::int64_t>(f.text.size()));
  EXPECT_EQ(r->graph_filename, "objects/" + f.key.substr(0, 2) + "/" + f.key.substr(2) + ".graph");
  EXPECT_EQ(r->poly_filename, "objects/" + f.key.substr(0, 2) + "/" + f.key.substr(2) + ".pols");
  EXPECT_EQ(store.read_graph(*r), f.text);
  EXPECT_EQ(parse_system(store.read_poly(*r)), s);
  EXPECT_EQ(r->created_at.size(), 20u);
  EXPECT_EQ(r->created_at.back(), 'Z');
}

TEST_F(StoreTest, PermutedVariantsHitDistinctSystemsMiss) {
  Store store(dir_);
  std::mt19937_64 rng(71);
  const auto corpus = testing::small_corpus(100, 73);
  std::set<std::string> keys;
  for (const PolySystem& s : corpus) keys.insert(store.insert(form_of(s), s).key);
  EXPECT_EQ(store.stats().records, keys.size());
  for (const PolySystem& s : corpus) {
    const auto hit = store.lookup(form_of(testing::scramble(s, rng)));
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->key, form_of(s).key);
  }
  EXPECT_FALSE(store.lookup(form_of(gen_cyclic(7))).has_value());
}

TEST_F(StoreTest, NarrowingAgreesWithLinearScan) {
  Store store(dir_);
  for (const PolySystem& s : testing::small_corpus(80, 79)) store.insert(form_of(s), s);
  const auto all = store.scan();
  for (const PolySystem& s : testing::small_corpus(120, 83)) {
    const CanonicalForm f = form_of(s);
    std::optional<std::string> linear;
    for (const DbRecord& r : all)
      if (store.read_graph(r) == f.text) linear = r.key;
    const auto hit = store.lookup(f);
    EXPECT_EQ(hit.has_value(), linear.has_value());
    if (hit && linear) EXPECT_EQ(hit->key, *linear);
  }
}

TEST_F(StoreTest, PersistsAcrossReopen) {
  std::vector<DbRecord> before;
  {
    Store store(dir_);
    for (std::size_t n : {4, 5, 6}) store.insert(form_of(gen_cyclic(n)), gen_cyclic(n), "cyclic");
    before = store.scan();
  }
  Store reopened(dir_);
  EXPECT_EQ(reopened.scan(), before);
  EXPECT_TRUE(reopened.lookup(form_of(gen_cyclic(5))).has_value());
}

TEST_F(StoreTest, DetectsCorruptedObjects) {
  Store store(dir_);
  const PolySystem s = gen_cyclic(4);
  const CanonicalForm f = form_of(s);
  const InsertResult r = store.insert(f, s);
  const DbRecord rec = *store.get(r.key);
  {
    std::ofstream out(dir_ / rec.graph_filename, std::ios::app);
    out << "tampered";
  }
  EXPECT_THROW(store.lookup(f), CorruptionError);
  EXPECT_THROW(store.read_graph(rec), CorruptionError);
  fs::remove(dir_ / rec.graph_filename);
  EXPECT_THROW(store.lookup(f), CorruptionError);
}

TEST_F(StoreTest, RejectsForeignFormat) {
  { Store store(dir_); }
  {
    sqlite3* db = nullptr;
    ASSERT_EQ(sqlite3_open((dir_ / "index.sqlite").c_str(), &db), SQLITE_OK);
    sqlite3_exec(db, "UPDATE meta SET value = 'SSC0' WHERE name = 'format'", nullptr, nullptr, nullptr);
    sqlite3_close(db);
  }
  EXPECT_THROW(Store{dir_}, StoreError);
}

TEST_F(StoreTest, StatsHistogram) {
  Store store(dir_);
  for (std::size_t n : {4, 6, 8, 10, 12}) store.insert(form_of(gen_cyclic(n)), gen_cyclic(n));
  store.insert(form_of(gen_nash(4)), gen_nash(4));
  const StoreStats st = store.stats();
  EXPECT_EQ(st.records, 6u);
  EXPECT_EQ(st.by_equation_count, (std::map<std::int64_t, std::size_t>{{4, 2}, {6, 1}, {8, 1}, {10, 1}, {12, 1}}));
  EXPECT_GT(st.bytes_on_disk, 0u);
  EXPECT_TRUE(store.writable());
}

TEST_F(StoreTest, GetUnknownKey) {
  Store store(dir_);
  EXPECT_FALSE(store.get(std::string(64, 'a')).has_value());
}

}  // namespace
}  // namespace polyclass
