#include "nam/stratify.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nam/transform.hpp"

namespace nam {

namespace {

// Difference constraints L(b) - L(a) = diff over named nodes.
struct Constraints {
  std::map<std::string, int> nodes;
  std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (other, level delta)
  int builderCounter = 0;

  int node(const std::string& name) {
    auto [it, inserted] = nodes.emplace(name, static_cast<int>(adj.size()));
    if (inserted) adj.emplace_back();
    return it->second;
  }

  void add(int a, int b, int diff) {
    adj[a].push_back({b, diff});
    adj[b].push_back({a, -diff});
  }
};

// Returns the node id for a term when it participates in level constraints.
std::optional<int> term_node(const TermPtr& t, Constraints& cs);

void collect(const Formula& f, Constraints& cs) {
  switch (f.kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      break;
    case FormulaKind::Member: {
      auto a = term_node(f.t1, cs);
      auto b = term_node(f.t2, cs);
      if (a && b) cs.add(*a, *b, 1);
      break;
    }
    case FormulaKind::Equal: {
      auto a = term_node(f.t1, cs);
      auto b = term_node(f.t2, cs);
      if (a && b) cs.add(*a, *b, 0);
      break;
    }
    case FormulaKind::NormalAtom:
      term_node(f.t1, cs);  // visit for nested builders, imposes nothing itself
      break;
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      collect(*f.f1, cs);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      collect(*f.f1, cs);
      collect(*f.f2, cs);
      break;
  }
}

std::optional<int> term_node(const TermPtr& t, Constraints& cs) {
  switch (t->kind) {
    case TermKind::Variable:
      return cs.node(t->name);
    case TermKind::Constant:
      return std::nullopt;
    case TermKind::Builder: {
      // Bound names are unique after normalization, so the bound variable's
      // node doubles as the anchor for the builder's own level.
      int bound = cs.node(t->name);
      std::string id = "{}#" + std::to_string(cs.builderCounter++);
      int self = cs.node(id);
      cs.add(bound, self, 1);
      collect(*t->body, cs);
      return self;
    }
  }
  return std::nullopt;
}

bool feasible(const Constraints& cs) {
  std::vector<std::optional<int>> level(cs.adj.size());
  for (size_t root = 0; root < cs.adj.size(); ++root) {
    if (level[root]) continue;
    level[root] = 0;
    std::vector<int> queue{static_cast<int>(root)};
    while (!queue.empty()) {
      int a = queue.back();
      queue.pop_back();
      for (auto [b, diff] : cs.adj[a]) {
        int want = *level[a] + diff;
        if (!level[b]) {
          level[b] = want;
          queue.push_back(b);
        } else if (*level[b] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool stratified(const Formula& f) {
  auto copy = std::make_shared<Formula>(f);
  auto normalized = alpha_normalize(copy);
  Constraints cs;
  collect(*normalized, cs);
  return feasible(cs);
}

}  // namespace nam
