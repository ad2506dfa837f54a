#include "ccembed/embedding.hpp"

#include <sstream>

#include "ccembed/io.hpp"

namespace ccembed {

Eigen::MatrixXd center_rows(Eigen::MatrixXd x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  return x;
}

std::string trace_csv(const SolveTrace& trace) {
  std::ostringstream out;
  out << "iter,stress,objective,smoothness,step_frobenius\n";
  for (const auto& rec : trace)
    out << rec.iter << ',' << format_double(rec.stress) << ','
        << format_double(rec.objective) << ',' << format_double(rec.smoothness)
        << ',' << format_double(rec.step_frobenius) << '\n';
  return out.str();
}

std::string embedding_csv(const Graph& g, const Embedding& emb) {
  std::ostringstream out;
  out << "node_id,x,y";
  if (emb.p() >= 3) out << ",z";
  out << '\n';
  for (int i = 0; i < emb.n(); ++i) {
    out << g.label(i);
    for (int k = 0; k < emb.p(); ++k)
      out << ',' << format_double(emb.coords(i, k));
    out << '\n';
  }
  return out.str();
}

}  // namespace ccembed
