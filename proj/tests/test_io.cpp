#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "fitrec/error.hpp"
#include "fitrec/bootstrap.hpp"
#include "fitrec/io.hpp"

using namespace fitrec;

namespace {

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("edge list: basic rows") {
    const auto g = io::parse_edge_list("src,dst,weight\na,b,5\nb,a,3\n");
    CHECK(g.node_count() == 2);
    CHECK(g.weight(0, 1) == 5.0);
    CHECK(g.weight(1, 0) == 3.0);
    CHECK(g.labels() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("edge list: duplicate rows are summed") {
    const auto g = io::parse_edge_list("src,dst,weight\na,b,1\na,b,2");
    CHECK(g.weight(0, 1) == 3.0);
    CHECK(g.weight(1, 0) == 0.0);
}

TEST_CASE("edge list: a node seen only as a source still counts") {
    const auto g = io::parse_edge_list("src,dst,weight\nx,y,1\ny,x,2\nz,x,4\n");
    CHECK(g.node_count() == 3);
    CHECK(g.labels() == std::vector<std::string>{"x", "y", "z"});
    CHECK(g.weight(2, 0) == 4.0);
    CHECK(binarize(g).degree(2) == 1);
}

TEST_CASE("edge list: CRLF, blank lines and self rows") {
    const auto g = io::parse_edge_list("src,dst,weight\r\nq,q,0\r\n\r\np,q,2.5e-1\r\n");
    CHECK(g.node_count() == 2);
    CHECK(g.labels() == std::vector<std::string>{"q", "p"});
    CHECK(g.weight(1, 0) == 0.25);
}

TEST_CASE("edge list: errors carry line numbers") {
    CHECK(message_of([] { (void)io::parse_edge_list(""); }).find("line 1: empty file") != std::string::npos);
    CHECK(message_of([] { (void)io::parse_edge_list("a,b,1\n"); }).find("line 1: expected header") !=
          std::string::npos);
    CHECK(message_of([] { (void)io::parse_edge_list("src,dst,weight\n"); }).find("no rows") != std::string::npos);
    CHECK(message_of([] { (void)io::parse_edge_list("src,dst,weight\na,b,1\nb,c,-2\n"); })
              .find("line 3: negative weight") != std::string::npos);
    CHECK(message_of([] { (void)io::parse_edge_list("src,dst,weight\na,b\n"); }).find("line 2: expected 3 fields") !=
          std::string::npos);
    CHECK(message_of([] { (void)io::parse_edge_list("src,dst,weight\na,b,1\n\na,c,x1\n"); })
              .find("line 4: malformed weight") != std::string::npos);
    CHECK(message_of([] { (void)io::parse_edge_list("src,dst,weight\na,b,nan\n"); }).find("line 2") !=
          std::string::npos);
    CHECK(message_of([] { (void)io::parse_edge_list("src,dst,weight\n,b,1\n"); }).find("line 2: empty field") !=
          std::string::npos);
}

TEST_CASE("fitness: valid file round-trips") {
    const auto f = io::parse_fitness("node,fitness\nb,2.5\na,1e3\n");
    CHECK(f.labels() == std::vector<std::string>{"b", "a"});
    CHECK(f[0] == 2.5);
    CHECK(f[1] == 1000.0);
}

TEST_CASE("fitness: rejections") {
    CHECK(message_of([] { (void)io::parse_fitness("node,fitness\na,1\nb,0\n"); }).find("line 3: fitness must be positive") !=
          std::string::npos);
    CHECK(message_of([] { (void)io::parse_fitness("node,fitness\na,1\nb,-4\n"); }).find("line 3") != std::string::npos);
    CHECK(message_of([] { (void)io::parse_fitness("node,fitness\na,1\na,2\n"); }).find("line 3: duplicate node 'a'") !=
          std::string::npos);
}

TEST_CASE("fitness alignment lists the symmetric difference") {
    const auto f = io::parse_fitness("node,fitness\na,1\nb,2\nd,4\n");
    const std::vector<std::string> labels{"b", "c", "a"};
    const auto msg = message_of([&] { (void)io::align_fitness(f, labels); });
    CHECK(msg.find("missing fitness for: c;") != std::string::npos);
    CHECK(msg.find("not in graph: d;") != std::string::npos);

    const auto aligned = io::align_fitness(f, {"d", "a", "b"});
    CHECK(aligned.labels() == std::vector<std::string>{"d", "a", "b"});
    CHECK(aligned[0] == 4.0);
    CHECK(aligned[1] == 1.0);
    CHECK(aligned[2] == 2.0);
}

TEST_CASE("observed degrees resolve against the fitness labels") {
    const auto f = io::parse_fitness("node,fitness\na,1\nb,2\nc,3\n");
    const auto obs = io::parse_observed("node,degree\nc,1\na,2\n", f);
    CHECK(obs.node_count() == 3);
    CHECK(obs.subset()[0] == 2);
    CHECK(obs.subset()[1] == 0);
    CHECK(obs.degrees()[1] == 2.0);
    CHECK(message_of([&] { (void)io::parse_observed("node,degree\nq,1\n", f); }).find("line 2: unknown node 'q'") !=
          std::string::npos);
    CHECK(message_of([&] { (void)io::parse_observed("node,degree\na,3\n", f); }).find("line 2") != std::string::npos);
}

TEST_CASE("sample, write, ingest and binarize reproduces the graph") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto y = lognormal_fitness(25, 0.0, 1.0, seed);
        const auto g = FitnessEnsemble(y, 0.01 + 0.01 * static_cast<double>(seed)).sample(seed);
        const auto back = binarize(io::parse_edge_list(io::write_edge_list(g)));
        CHECK(back == g);
        CHECK(back.labels() == g.labels());
    }
    const auto empty = Graph::empty(4);
    CHECK(binarize(io::parse_edge_list(io::write_edge_list(empty))) == empty);
}

TEST_CASE("real formatting is shortest round-trip") {
    CHECK(io::format_real(0.1) == "0.1");
    CHECK(io::format_real(2.0 / 3.0) == "0.6666666666666666");
    CHECK(io::format_real(1e-300) == "1e-300");
    CHECK(std::stod(io::format_real(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("metrics report serialization") {
    const std::vector<std::pair<std::size_t, std::size_t>> e{{0, 1}, {1, 2}};
    const auto g = Graph::from_edges(3, e);
    const auto csv = io::write_metrics(exact_metrics(g), default_labels(3), io::Format::csv);
    CHECK(csv.find("property,value\n") == 0);
    CHECK(csv.find("density,0.6666666666666666\n") != std::string::npos);
    const auto json = nlohmann::json::parse(io::write_metrics(exact_metrics(g), default_labels(3), io::Format::json));
    CHECK(json["density"].get<double>() == 2.0 / 3.0);

    const auto k4 = io::write_metrics(exact_metrics(Graph::complete(4)), default_labels(4), io::Format::csv);
    CHECK(k4.find("rich_club,NA\n") != std::string::npos);
}

TEST_CASE("estimates and calibration serialization") {
    const FitnessVector y(std::vector<double>(5, 1.0));
    const auto est = reconstruct(y, PartialObservation(5, {0}, {2.0}), all_properties);
    const auto csv = io::write_estimates(est, io::Format::csv);
    CHECK(csv.find("property,mean,std,method,samples,z\n") == 0);
    CHECK(csv.find("analytic-plugin") != std::string::npos);
    CHECK(csv.find("knn,") != std::string::npos);
    const auto j = nlohmann::json::parse(io::write_estimates(est, io::Format::json));
    CHECK(j["estimates"].size() == 4);
    CHECK(j["estimates"][0]["std"].get<double>() == doctest::Approx(0.158113883));

    const auto c = calibrate_z(y, std::vector<std::size_t>{0}, std::vector<double>{2.0});
    CHECK(io::write_calibration(c, io::Format::csv).find("z,residual,target,tolerance\n") == 0);
}

TEST_CASE("fitness generator specs") {
    const auto a = io::generate_fitness("lognormal:0,1,40", 3);
    CHECK(a.size() == 40);
    CHECK(a.values()[7] == lognormal_fitness(40, 0.0, 1.0, 3).values()[7]);
    const auto b = io::generate_fitness("powerlaw:2.5,1,10", 3);
    CHECK(b.size() == 10);
    CHECK_THROWS_AS(io::generate_fitness("gauss:0,1,10", 1), Error);
    CHECK_THROWS_AS(io::generate_fitness("lognormal:0,1", 1), Error);
    CHECK_THROWS_AS(io::generate_fitness("lognormal:0,1,-3", 1), Error);
    CHECK_THROWS_AS(io::generate_fitness("lognormal", 1), Error);
}
