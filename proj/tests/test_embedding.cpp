#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "common.hpp"
#include "specgraph/embedding.hpp"
#include "specgraph/properties.hpp"
#include "specgraph/spectral.hpp"

using namespace specgraph;
using testutil::triangle;
using testutil::two_component8;
using testutil::weighted8;
using Catch::Approx;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

double kmeans_objective(const Eigen::MatrixXd& pts, const std::vector<int>& labels, int k) {
    const int m = static_cast<int>(pts.cols());
    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(k, m);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < pts.rows(); ++i) {
        centroids.row(labels[i]) += pts.row(i);
        ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c)
        if (counts[c] > 0) centroids.row(c) /= counts[c];
    double total = 0.0;
    for (int i = 0; i < pts.rows(); ++i)
        total += (pts.row(i) - centroids.row(labels[i])).squaredNorm();
    return total;
}

}  // namespace

TEST_CASE("one-dimensional spectral embedding is the connectivity eigenvector",
          "[embedding]") {
    Graph g = weighted8();
    embedding::SpectralEmbedding e = embedding::embed(g, embedding::EmbeddingMap::laplacian, 1);
    REQUIRE(e.coords.rows() == 8);
    REQUIRE(e.coords.cols() == 1);
    CHECK(e.M == 1);
    testutil::check_close(e.coords.col(0),
                          {-0.418762718278, -0.382275571944, -0.354540544408, -0.152364941858,
                           0.087697926485, 0.335181803040, 0.347974769060, 0.537089277902},
                          1e-9);

    CHECK(code_of([&] { embedding::embed(g, embedding::EmbeddingMap::laplacian, 8); }) ==
          ErrorCode::dimension_too_large);
    CHECK(code_of([&] { embedding::embed(g, embedding::EmbeddingMap::laplacian, 0); }) ==
          ErrorCode::dimension_too_large);
}

TEST_CASE("mapping-specific eigenpair scalings", "[embedding]") {
    Graph g = weighted8();
    spectral::EigenDecomposition gen = spectral::eig_generalized(g);

    // diffusion with t = 0 degenerates to the unscaled generalized embedding
    embedding::SpectralEmbedding gen3 =
        embedding::embed(g, embedding::EmbeddingMap::generalized, 3);
    embedding::SpectralEmbedding diff0 =
        embedding::embed(g, embedding::EmbeddingMap::diffusion, 3, 0);
    CHECK((gen3.coords - diff0.coords).cwiseAbs().maxCoeff() < 1e-12);

    // each scaling against its defining formula
    embedding::SpectralEmbedding commute =
        embedding::embed(g, embedding::EmbeddingMap::commute_time, 3);
    embedding::SpectralEmbedding diff2 =
        embedding::embed(g, embedding::EmbeddingMap::diffusion, 3, 2);
    embedding::SpectralEmbedding cumulative =
        embedding::embed(g, embedding::EmbeddingMap::cumulative_diffusion, 3);
    spectral::EigenDecomposition lap_eig = spectral::eig_symmetric(
        laplacian(g, LaplacianVariant::standard()), spectral::MatrixVariant::laplacian);
    embedding::SpectralEmbedding ct_basis =
        embedding::embed(g, embedding::EmbeddingMap::laplacian, 3);
    for (int k = 1; k <= 3; ++k) {
        CHECK((commute.coords.col(k - 1) -
               ct_basis.coords.col(k - 1) / std::sqrt(lap_eig.eigenvalues(k)))
                  .norm() < 1e-10);
        CHECK((diff2.coords.col(k - 1) -
               std::pow(1.0 - gen.eigenvalues(k), 2) * gen.eigenvectors.col(k))
                  .norm() < 1e-10);
        CHECK((cumulative.coords.col(k - 1) - gen.eigenvectors.col(k) / gen.eigenvalues(k))
                  .norm() < 1e-10);
    }

    // cumulative scaling is the limit of summed diffusion embeddings
    embedding::SpectralEmbedding summed =
        embedding::embed(g, embedding::EmbeddingMap::diffusion, 7, 0);
    Eigen::MatrixXd acc = summed.coords;
    for (int t = 1; t <= 200; ++t)
        acc += embedding::embed(g, embedding::EmbeddingMap::diffusion, 7, t).coords;
    embedding::SpectralEmbedding cum_full =
        embedding::embed(g, embedding::EmbeddingMap::cumulative_diffusion, 7);
    CHECK((acc - cum_full.coords).cwiseAbs().maxCoeff() < 1e-4);

    // 1/lambda scalings refuse disconnected graphs; plain diffusion does not
    Graph split = two_component8();
    CHECK(code_of([&] { embedding::embed(split, embedding::EmbeddingMap::commute_time, 2); }) ==
          ErrorCode::disconnected_for_scaling);
    CHECK(code_of([&] {
              embedding::embed(split, embedding::EmbeddingMap::cumulative_diffusion, 2);
          }) == ErrorCode::disconnected_for_scaling);
    CHECK_NOTHROW(embedding::embed(split, embedding::EmbeddingMap::diffusion, 2, 3));
}

TEST_CASE("coordinate normalization schemes", "[embedding]") {
    Graph g = weighted8();
    embedding::SpectralEmbedding e = embedding::embed(g, embedding::EmbeddingMap::laplacian, 1);

    embedding::SpectralEmbedding mm =
        embedding::normalize_embedding(e, embedding::NormScheme::minmax);
    CHECK(mm.coords.minCoeff() == Approx(0.0).margin(1e-15));
    CHECK(mm.coords.maxCoeff() == Approx(1.0).margin(1e-15));
    CHECK(mm.coords(0, 0) == Approx(0.0).margin(1e-15));  // most negative entry
    CHECK(mm.coords(7, 0) == Approx(1.0).margin(1e-15));  // most positive entry
    CHECK(mm.normalization == embedding::NormScheme::minmax);

    embedding::SpectralEmbedding sg =
        embedding::normalize_embedding(e, embedding::NormScheme::sign);
    for (int v = 0; v < 8; ++v)
        CHECK(sg.coords(v, 0) == (e.coords(v, 0) >= 0.0 ? 1.0 : -1.0));

    embedding::SpectralEmbedding sm =
        embedding::normalize_embedding(e, embedding::NormScheme::sign_mid);
    const double mid = (e.coords.col(0).maxCoeff() + e.coords.col(0).minCoeff()) / 2.0;
    for (int v = 0; v < 8; ++v)
        CHECK(sm.coords(v, 0) == (e.coords(v, 0) >= mid ? 1.0 : -1.0));
    // the midrange split separates the two communities here
    for (int v : {0, 1, 2, 3}) CHECK(sm.coords(v, 0) == -1.0);
    for (int v : {4, 5, 6, 7}) CHECK(sm.coords(v, 0) == 1.0);

    embedding::SpectralEmbedding un =
        embedding::normalize_embedding(e, embedding::NormScheme::unit_norm);
    for (int v = 0; v < 8; ++v) CHECK(std::abs(un.coords(v, 0)) == Approx(1.0));

    embedding::SpectralEmbedding un2 = embedding::normalize_embedding(
        embedding::embed(g, embedding::EmbeddingMap::laplacian, 3),
        embedding::NormScheme::unit_norm);
    for (int v = 0; v < 8; ++v) CHECK(un2.coords.row(v).norm() == Approx(1.0).margin(1e-12));

    embedding::SpectralEmbedding constant;
    constant.coords = Eigen::MatrixXd::Constant(4, 1, 0.5);
    constant.M = 1;
    CHECK(code_of([&] {
              embedding::normalize_embedding(constant, embedding::NormScheme::minmax);
          }) == ErrorCode::degenerate_column);
    CHECK_NOTHROW(embedding::normalize_embedding(constant, embedding::NormScheme::none));
}

TEST_CASE("row-normalized variants of the two normalized embeddings agree", "[embedding]") {
    Graph g = weighted8();
    embedding::SpectralEmbedding gen = embedding::normalize_embedding(
        embedding::embed(g, embedding::EmbeddingMap::generalized, 3),
        embedding::NormScheme::unit_norm);
    embedding::SpectralEmbedding nrm = embedding::normalize_embedding(
        embedding::embed(g, embedding::EmbeddingMap::normalized, 3),
        embedding::NormScheme::unit_norm);
    // columns may differ in sign between the two eigenbases
    for (int k = 0; k < 3; ++k) {
        Eigen::VectorXd a = gen.coords.col(k);
        Eigen::VectorXd b = nrm.coords.col(k);
        if (a.dot(b) < 0.0) b = -b;
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("sign of the connectivity eigenvector splits the communities", "[embedding]") {
    Graph g = weighted8();
    for (auto variant : {embedding::EmbeddingMap::laplacian, embedding::EmbeddingMap::generalized,
                         embedding::EmbeddingMap::normalized}) {
        cuts::Partition p = embedding::fiedler_bipartition(g, variant);
        CHECK(p.sets[0] == std::vector<int>{4, 5, 6, 7});
        CHECK(p.sets[1] == std::vector<int>{0, 1, 2, 3});
    }

    CHECK(code_of([&] {
              embedding::fiedler_bipartition(g, embedding::EmbeddingMap::commute_time);
          }) == ErrorCode::invalid_argument);
    CHECK(code_of([&] {
              embedding::fiedler_bipartition(two_component8(), embedding::EmbeddingMap::laplacian);
          }) == ErrorCode::disconnected);

    // a disconnected graph is already split by its components
    auto comps = connected_components(two_component8());
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(comps[1] == std::vector<int>{4, 5, 6, 7});
}

TEST_CASE("k-means refinement", "[embedding]") {
    // two well-separated one-dimensional blobs
    embedding::SpectralEmbedding e;
    e.coords.resize(8, 1);
    e.coords << 0.0, 0.1, 0.2, 0.3, 10.0, 10.1, 10.2, 10.3;
    e.M = 1;
    embedding::ClusterAssignment a = embedding::kmeans_refine(e, 2, 42);
    CHECK(a.labels[0] == a.labels[1]);
    CHECK(a.labels[0] == a.labels[2]);
    CHECK(a.labels[0] == a.labels[3]);
    CHECK(a.labels[4] == a.labels[5]);
    CHECK(a.labels[4] == a.labels[6]);
    CHECK(a.labels[4] == a.labels[7]);
    CHECK(a.labels[0] != a.labels[4]);
    CHECK(a.iterations <= 3);
    CHECK(a.centroids.rows() == 2);

    // optimal 2-clustering: compare with exhaustive assignment search
    std::mt19937_64 eng(61);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    embedding::SpectralEmbedding pts;
    pts.coords.resize(8, 2);
    for (int i = 0; i < 8; ++i) {
        const double shift = i < 4 ? 0.0 : 5.0;
        pts.coords(i, 0) = dist(eng) + shift;
        pts.coords(i, 1) = dist(eng) + shift;
    }
    pts.M = 2;
    double best = std::numeric_limits<double>::infinity();
    for (int mask = 1; mask < 255; ++mask) {
        std::vector<int> labels(8);
        for (int i = 0; i < 8; ++i) labels[i] = (mask >> i) & 1;
        best = std::min(best, kmeans_objective(pts.coords, labels, 2));
    }
    embedding::ClusterAssignment opt = embedding::kmeans_refine(pts, 2, 42);
    CHECK(kmeans_objective(pts.coords, opt.labels, 2) == Approx(best).margin(1e-12));

    // k = n puts every point in its own cluster
    embedding::ClusterAssignment solo = embedding::kmeans_refine(pts, 8, 42);
    std::vector<int> sorted = solo.labels;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 8; ++i) CHECK(sorted[i] == i);

    CHECK(code_of([&] { embedding::kmeans_refine(pts, 0, 42); }) ==
          ErrorCode::invalid_argument);
    CHECK(code_of([&] { embedding::kmeans_refine(pts, 9, 42); }) ==
          ErrorCode::invalid_argument);

    // deterministic for a fixed seed
    embedding::ClusterAssignment again = embedding::kmeans_refine(pts, 2, 42);
    CHECK(again.labels == opt.labels);
}

TEST_CASE("spectral clustering of the two-community graph end to end", "[embedding]") {
    Graph g = weighted8();
    embedding::SpectralEmbedding e = embedding::embed(g, embedding::EmbeddingMap::laplacian, 1);
    embedding::ClusterAssignment a = embedding::kmeans_refine(e, 2, 42);
    cuts::Partition p = cuts::partition_from_labels(g, a.labels, 2);
    REQUIRE(p.sets.size() == 2);
    // order of the sets depends on centroid seeding; compare as a set of sets
    std::vector<std::vector<int>> sets = p.sets;
    std::sort(sets.begin(), sets.end());
    CHECK(sets[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(sets[1] == std::vector<int>{4, 5, 6, 7});
}

TEST_CASE("relative eigengap", "[embedding]") {
    Graph g = weighted8();
    Eigen::VectorXd eigs = spectral::eig_symmetric(laplacian(g, LaplacianVariant::standard()),
                                                   spectral::MatrixVariant::laplacian)
                               .eigenvalues;
    CHECK(embedding::relative_eigengap(eigs, 1) == Approx(0.150949739817).margin(1e-9));
    // k = 0 spans the zero eigenvalue: gap is exactly 1
    CHECK(embedding::relative_eigengap(eigs, 0) == 1.0);

    Eigen::VectorXd two_comp =
        spectral::eig_symmetric(laplacian(two_component8(), LaplacianVariant::standard()),
                                spectral::MatrixVariant::laplacian)
            .eigenvalues;
    // lambda_1 is numerically zero, so the k = 1 gap clamps to exactly 1
    CHECK(embedding::relative_eigengap(two_comp, 1) == 1.0);
    CHECK(code_of([&] { embedding::relative_eigengap(two_comp, 0); }) ==
          ErrorCode::zero_denominator);
    CHECK(code_of([&] { embedding::relative_eigengap(eigs, 7); }) ==
          ErrorCode::invalid_argument);

    // four leading eigenvalues of a 64-vertex two-level community graph
    Eigen::VectorXd synthetic(6);
    synthetic << 0.0, 0.0286, 0.0358, 0.0899, 0.3, 0.5;
    CHECK(embedding::relative_eigengap(synthetic, 2) ==
          Approx(1.0 - 0.0358 / 0.0899).margin(1e-12));
    CHECK(embedding::relative_eigengap(synthetic, 2) == Approx(0.601779755284).margin(1e-9));
}

TEST_CASE("diffusion distance", "[embedding]") {
    Graph g = weighted8();
    CHECK(embedding::diffusion_distance(g, 1, 3, 1) == Approx(1.541012889222).margin(1e-9));
    CHECK(embedding::diffusion_distance(g, 6, 3, 1) == Approx(2.847232781166).margin(1e-9));
    CHECK(embedding::diffusion_distance(g, 1, 3, 2) == Approx(0.940742617677).margin(1e-9));

    CHECK(embedding::diffusion_distance(g, 3, 3, 1) == Approx(0.0).margin(1e-12));
    CHECK(embedding::diffusion_distance(g, 3, 1, 1) ==
          Approx(embedding::diffusion_distance(g, 1, 3, 1)).margin(1e-12));

    CHECK(code_of([&] { embedding::diffusion_distance(g, 1, 3, 0); }) ==
          ErrorCode::invalid_argument);
    CHECK(code_of([&] { embedding::diffusion_distance(two_component8(), 0, 4, 1); }) ==
          ErrorCode::disconnected);
}

TEST_CASE("commute-time distance", "[embedding]") {
    Graph g = weighted8();
    CHECK(embedding::commute_time_distance(g, 0, 7) == Approx(5.513254507765).margin(1e-9));
    CHECK(embedding::commute_time_distance(g, 1, 3) == Approx(4.685589486193).margin(1e-9));
    CHECK(embedding::commute_time_distance(g, 7, 0) ==
          Approx(embedding::commute_time_distance(g, 0, 7)).margin(1e-12));
    CHECK(embedding::commute_time_distance(g, 2, 2) == Approx(0.0).margin(1e-12));

    // triangle with unit weights: resistance 2/3, volume 6, CT = sqrt(6 * 2/3) = 2
    CHECK(embedding::commute_time_distance(triangle(), 0, 1) == Approx(2.0).margin(1e-12));

    CHECK(code_of([&] { embedding::commute_time_distance(two_component8(), 0, 4); }) ==
          ErrorCode::disconnected);
}

TEST_CASE("Laplacian pseudo-inverse", "[embedding]") {
    Graph g = weighted8();
    Eigen::MatrixXd l = laplacian(g, LaplacianVariant::standard());
    Eigen::MatrixXd pinv = embedding::laplacian_pseudoinverse(l);

    spectral::EigenDecomposition le =
        spectral::eig_symmetric(l, spectral::MatrixVariant::laplacian);
    spectral::EigenDecomposition pe =
        spectral::eig_symmetric(pinv, spectral::MatrixVariant::laplacian);

    // spectrum is {0} plus the reciprocals
    std::vector<double> expected{0.0};
    for (int k = 1; k < 8; ++k) expected.push_back(1.0 / le.eigenvalues(k));
    std::sort(expected.begin(), expected.end());
    testutil::check_close(pe.eigenvalues, expected, 1e-9);

    CHECK((l * pinv * l - l).cwiseAbs().maxCoeff() < 1e-8 * l.norm());
    CHECK((pinv * l * pinv - pinv).cwiseAbs().maxCoeff() < 1e-8 * pinv.norm());
    CHECK((l * pinv - pinv * l).cwiseAbs().maxCoeff() < 1e-10);  // shared eigenbasis

    CHECK(code_of([&] {
              embedding::laplacian_pseudoinverse(
                  laplacian(two_component8(), LaplacianVariant::standard()));
          }) == ErrorCode::multiple_zero_eigenvalues);
}

TEST_CASE("two-dimensional embedding minimizes the summed quadratic form", "[embedding]") {
    Graph g = weighted8();
    Eigen::MatrixXd l = laplacian(g, LaplacianVariant::standard());
    spectral::EigenDecomposition eig =
        spectral::eig_symmetric(l, spectral::MatrixVariant::laplacian);
    const double lambda_sum = eig.eigenvalues(1) + eig.eigenvalues(2);

    // the embedding coordinates achieve the optimum...
    embedding::SpectralEmbedding e = embedding::embed(g, embedding::EmbeddingMap::laplacian, 2);
    double pairwise = 0.0;
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 8; ++n)
            pairwise += (e.coords.row(m) - e.coords.row(n)).squaredNorm() * g.weights(m, n);
    CHECK(pairwise / 2.0 == Approx(lambda_sum).margin(1e-8));
    CHECK(pairwise / 2.0 == Approx(0.623293068716).margin(1e-8));

    // ...and no other pair of distinct non-constant eigenvectors does better
    for (int i = 1; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            CHECK(eig.eigenvalues(i) + eig.eigenvalues(j) >= lambda_sum - 1e-12);
}
