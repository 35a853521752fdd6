#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "trilasso/admm.hpp"
#include "trilasso/dual.hpp"
#include "trilasso/io.hpp"

using namespace trilasso;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = TRILASSO_FIXTURE_DIR;

struct Workspace {
  fs::path root;
  Workspace() {
    root = fs::temp_directory_path() / ("trilasso_cli_" + std::to_string(::getpid()));
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }
  std::string operator/(const std::string& name) const { return (root / name).string(); }
};

// Runs the CLI and returns its exit status; stdout/stderr go to `log`.
int run(const std::string& args, const std::string& log) {
  const std::string cmd = std::string("\"") + TRILASSO_CLI + "\" " + args + " > \"" + log + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture(const std::string& name) { return "\"" + (kFixtures / name).string() + "\""; }

}  // namespace

TEST_CASE("build-graph writes the triangle multiplicities") {
  Workspace ws;
  REQUIRE(run("build-graph --edges " + fixture("five_vertex.edges") + " --out " + ws / "g.txt", ws / "log") == 0);
  const Graph g = io::read_graph(fs::path(ws / "g.txt"));
  std::vector<int> q;
  for (const Edge& e : g.edges()) q.push_back(e.q);
  CHECK(q == std::vector<int>{1, 3, 3, 1, 3});
  CHECK(fs::exists(ws / "g.txt.config.json"));

  std::ofstream(ws / "empty.edges") << "# vertices 4\n";
  REQUIRE(run("build-graph --edges " + ws / "empty.edges" + " --out " + ws / "e.txt", ws / "log") == 0);
  CHECK(io::read_graph(fs::path(ws / "e.txt")).num_edges() == 0);

  std::ofstream(ws / "bad.edges") << "0 1\n1 x\n";
  CHECK(run("build-graph --edges " + ws / "bad.edges" + " --out " + ws / "b.txt", ws / "log") == 1);
  CHECK(slurp(ws / "log").find(":2:") != std::string::npos);
}

TEST_CASE("missing values need an explicit policy") {
  Workspace ws;
  CHECK(run("build-graph --data " + fixture("missing.csv") + " --k 1 --out " + ws / "g.txt", ws / "log") == 1);
  CHECK(slurp(ws / "log").find("missing values present") != std::string::npos);
  CHECK(run("build-graph --data " + fixture("missing.csv") + " --impute mean --k 1 --out " + ws / "g.txt",
            ws / "log") == 0);
}

TEST_CASE("solve: both methods agree and tiny alpha keeps every instance apart") {
  Workspace ws;
  const std::string base = "solve --data " + fixture("n8.csv") + " --response y --graph " + fixture("n8.graph") +
                           " --loss clustering --alpha 0.3 --tol-abs 1e-10 --tol-rel 1e-9 --max-iter 50000";
  REQUIRE(run(base + " --method admm --out-dir " + ws / "a", ws / "log") == 0);
  REQUIRE(run(base + " --method dual --out-dir " + ws / "d", ws / "log") == 0);
  const double pa = io::read_json(fs::path(ws / "a/solution.json"))["objective"];
  const double pd = io::read_json(fs::path(ws / "d/solution.json"))["objective"];
  CHECK(std::abs(pa - pd) <= 1e-4 * std::max(1.0, std::abs(pd)));

  REQUIRE(run("solve --data " + fixture("n8.csv") + " --response y --graph " + fixture("n8.graph") +
                  " --loss clustering --alpha 1e-9 --out-dir " + ws / "tiny",
              ws / "log") == 0);
  CHECK(io::read_json(fs::path(ws / "tiny/assignment.json"))["num_clusters"] == 8);
  const Matrix x = io::read_matrix_csv(fs::path(ws / "tiny/x.csv"));
  const Dataset data = io::read_data_csv(fs::path(kFixtures / "n8.csv"), std::string("y"));
  CHECK((x - data.instances).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(fs::exists(ws / "tiny/config.json"));
}

TEST_CASE("solve: q override gives the plain network lasso") {
  Workspace ws;
  REQUIRE(run("solve --data " + fixture("n8.csv") + " --response y --graph " + fixture("n8.graph") +
                  " --loss ridge --gamma 0.1 --alpha 0.2 --method dual --q-override 1 --out-dir " + ws / "o",
              ws / "log") == 0);
  // Oracle: the same edges entered with unit multiplicity, without triangle counting.
  const Dataset data = io::read_data_csv(fs::path(kFixtures / "n8.csv"), std::string("y"));
  std::vector<Edge> edges;
  const Graph file_graph = io::read_graph(fs::path(kFixtures / "n8.graph"));
  for (const Edge& e : file_graph.edges()) edges.push_back({e.i, e.j});
  const Graph plain(8, edges);
  const Solution ref = solve_dual(LossModel::ridge(data.instances, *data.responses, 0.1), PenaltyMatrix(plain, 0.2));
  const Matrix x = io::read_matrix_csv(fs::path(ws / "o/x.csv"));
  CHECK((x - ref.x).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("non-convergence exits with status 2 and still writes artifacts") {
  Workspace ws;
  CHECK(run("solve --data " + fixture("n8.csv") + " --graph " + fixture("n8.graph") +
                " --loss clustering --alpha 0.3 --max-iter 2 --out-dir " + ws / "s",
            ws / "log") == 2);
  CHECK(fs::exists(ws / "s/x.csv"));
  CHECK(io::read_json(fs::path(ws / "s/solution.json"))["converged"] == false);
}

TEST_CASE("predict on perfect linear data reports zero error") {
  Workspace ws;
  REQUIRE(run("predict --data " + fixture("linear_train.csv") + " --response y --solution " +
                  fixture("linear_x.csv") + " --val " + fixture("linear_val.csv") + " --out-dir " + ws / "p",
              ws / "log") == 0);
  CHECK(double(io::read_json(fs::path(ws / "p/prediction.json"))["mse"]) == 0.0);
}

TEST_CASE("cluster-path alpha column is strictly increasing") {
  Workspace ws;
  REQUIRE(run("cluster-path --data " + fixture("n8.csv") + " --graph " + fixture("n8.graph") +
                  " --loss clustering --alpha-init 0.01 --step-init 1 --step-increment 1 --points 6 --method dual"
                  " --out-dir " + ws / "c",
              ws / "log") == 0);
  const ClusterPath path = io::read_cluster_path(fs::path(ws / "c/path.csv"));
  REQUIRE(path.points.size() == 5);
  for (std::size_t k = 1; k < path.points.size(); ++k) CHECK(path.points[k].alpha > path.points[k - 1].alpha);
}

TEST_CASE("communities and generators") {
  Workspace ws;
  REQUIRE(run("gen planted --block 10 --p-in 1 --p-out 0 --out " + ws / "g.txt" + " --truth " + ws / "t.txt",
              ws / "log") == 0);
  REQUIRE(run("communities --graph " + ws / "g.txt" + " --truth " + ws / "t.txt" + " --alpha 1 --out-dir " +
                  ws / "c",
              ws / "log") == 0);
  CHECK(double(io::read_json(fs::path(ws / "c/communities.json"))["f1_mean"]) == 1.0);
  CHECK(io::read_communities(fs::path(ws / "c/communities.txt")).size() == 2);
  CHECK(run("gen network --kind lattice --out " + ws / "n.txt", ws / "log") == 1);
}
