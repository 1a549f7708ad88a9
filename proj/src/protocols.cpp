#include "fairslice/protocols.hpp"

#include <algorithm>
#include <numeric>

namespace fairslice {

namespace {

Assignment two_group_assignment(double cut, const std::vector<int>& group1, int n) {
  Assignment a;
  a.partition = Partition{{cut, 1.0 - cut}};
  std::vector<bool> in1(n, false);
  for (int i : group1) in1[i] = true;
  a.groups.resize(2);
  for (int i = 0; i < n; ++i) (in1[i] ? a.groups[0] : a.groups[1]).push_back(i);
  return a;
}

}  // namespace

ProtocolReport singleton_first(OracleSession& session) {
  int n = session.players();
  std::vector<double> answers(n);
  for (int i = 0; i < n; ++i) answers[i] = session.first(i);
  // Ties broken toward the lowest player index.
  int winner = static_cast<int>(std::min_element(answers.begin(), answers.end()) -
                                answers.begin());
  ProtocolReport r;
  r.assignment = two_group_assignment(answers[winner], {winner}, n);
  r.transcript = session.transcript();
  r.query_count = r.transcript.size();
  return r;
}

ProtocolReport singleton_last(OracleSession& session) {
  int n = session.players();
  std::vector<double> answers(n);
  for (int i = 0; i < n; ++i) {
    auto y = session.previous(i, 1.0);
    if (!y) throw std::invalid_argument("player has no indifference point (not hungry?)");
    answers[i] = *y;
  }
  int winner = static_cast<int>(std::max_element(answers.begin(), answers.end()) -
                                answers.begin());
  double cut = answers[winner];
  ProtocolReport r;
  std::vector<int> group1;
  for (int i = 0; i < n; ++i)
    if (i != winner) group1.push_back(i);
  r.assignment = two_group_assignment(cut, group1, n);
  r.transcript = session.transcript();
  r.query_count = r.transcript.size();
  return r;
}

ProtocolReport monotone_marks(TwoPieceSession& session, int k1) {
  int n = session.players();
  if (k1 < 1 || k1 > n - 1) throw std::invalid_argument("k1 must be in [1, n-1]");
  for (int i = 0; i < n; ++i)
    if (!session.monotone(i))
      throw std::invalid_argument("monotone_marks requires single-switch preferences");
  std::vector<double> marks(n);
  for (int i = 0; i < n; ++i) marks[i] = session.first(i);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return marks[a] < marks[b]; });
  double cut = (marks[order[k1 - 1]] + marks[order[k1]]) / 2.0;
  std::vector<int> group1(order.begin(), order.begin() + k1);
  std::sort(group1.begin(), group1.end());
  ProtocolReport r;
  r.assignment = two_group_assignment(cut, group1, n);
  r.transcript = session.transcript();
  r.query_count = r.transcript.size();
  return r;
}

EnvyReport verify_envy_free(const Assignment& a, const std::vector<DemandFn>& demands) {
  validate_assignment(a, static_cast<int>(demands.size()));
  EnvyReport r;
  for (size_t j = 0; j < a.groups.size(); ++j) {
    for (int i : a.groups[j]) {
      std::vector<int> d = demands[i](a.partition);
      if (!std::binary_search(d.begin(), d.end(), static_cast<int>(j))) {
        r.envy_free = false;
        r.violations.emplace_back(i, static_cast<int>(j));
      }
    }
  }
  return r;
}

}  // namespace fairslice
