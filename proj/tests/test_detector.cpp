#include "radiot/detector.hpp"

#include <cmath>
#include <fstream>

#include "doctest.h"
#include "radiot/errors.hpp"
#include "test_util.hpp"

using namespace radiot;

namespace {

// Zero model: forward(x) == 0, so the reconstruction error is exactly -x.
// Makes detector behavior a direct function of the input vector.
ModelParams zero_model() {
    ModelParams p = init_params(default_architecture(), 1);
    for (auto& l : p.layers) {
        std::fill(l.weights.begin(), l.weights.end(), 0.0);
        std::fill(l.biases.begin(), l.biases.end(), 0.0);
    }
    return p;
}

FeatureScaler identity_scaler() {
    FeatureScaler sc;
    sc.mins.fill(0.0);
    sc.maxs.fill(1.0);
    return sc;
}

}  // namespace

TEST_CASE("error stats: identical vectors give the mean with floored sigma") {
    std::vector<std::vector<double>> errors(5, std::vector<double>{0.5, -0.25, 0.0});
    ErrorStats st = fit_error_stats(errors);
    CHECK(st.mu == std::vector<double>{0.5, -0.25, 0.0});
    for (double s : st.sigma) CHECK(s == kSigmaFloor);
}

TEST_CASE("error stats: singleton components {0,2} give mu=1 sigma=1") {
    ErrorStats st = fit_error_stats({{0.0}, {2.0}});
    CHECK(st.mu[0] == 1.0);
    CHECK(st.sigma[0] == 1.0);
}

TEST_CASE("error stats preconditions") {
    CHECK_THROWS_AS(fit_error_stats({}), ConfigError);
    CHECK_THROWS_AS(fit_error_stats({{1.0}}), ConfigError);
    CHECK_THROWS_AS(fit_error_stats({{1.0}, {1.0, 2.0}}), ConfigError);
}

TEST_CASE("score is zero exactly at the mean") {
    ErrorStats st;
    st.mu = {0.1, -0.2, 0.3};
    st.sigma = {1.0, 2.0, 0.5};
    Score s = score(st, std::vector<double>{0.1, -0.2, 0.3});
    CHECK(s.value == 0.0);
}

TEST_CASE("one component at mu+sigma scores 1-exp(-1/2)") {
    ErrorStats st;
    st.mu = std::vector<double>(80, 0.0);
    st.sigma = std::vector<double>(80, 0.01);
    std::vector<double> e(80, 0.0);
    e[17] = 0.01;  // exactly one sigma
    Score s = score(st, e);
    CHECK(s.value == doctest::Approx(0.3934693402873666).epsilon(1e-15));
    CHECK(s.argmax == 17);
}

TEST_CASE("score bounds hold even for extreme deviations") {
    ErrorStats st;
    st.mu = {0.0};
    st.sigma = {kSigmaFloor};
    Score s = score(st, std::vector<double>{100.0});
    CHECK(s.value < 1.0);
    CHECK(s.value > 0.999999);
}

TEST_CASE("score is non-decreasing in each |e_i - mu_i|") {
    Rng rng(301);
    ErrorStats st;
    st.mu.resize(16);
    st.sigma.resize(16);
    for (std::size_t i = 0; i < 16; ++i) {
        st.mu[i] = rng.uniform(-1, 1);
        st.sigma[i] = rng.uniform(0.01, 2.0);
    }
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> e(16);
        for (std::size_t i = 0; i < 16; ++i) e[i] = st.mu[i] + rng.uniform(-3, 3) * st.sigma[i];
        double base = score(st, e).value;
        std::size_t i = rng.next_u64() % 16;
        // Push component i further from its mean.
        double sign = e[i] >= st.mu[i] ? 1.0 : -1.0;
        e[i] += sign * rng.uniform(0.0, 2.0) * st.sigma[i];
        CHECK(score(st, e).value >= base);
    }
}

TEST_CASE("argmax is invariant under common sigma scaling") {
    Rng rng(303);
    ErrorStats st;
    st.mu.resize(20);
    st.sigma.resize(20);
    std::vector<double> e(20);
    for (std::size_t i = 0; i < 20; ++i) {
        st.mu[i] = rng.uniform(-1, 1);
        st.sigma[i] = rng.uniform(0.05, 1.0);
        e[i] = st.mu[i] + rng.uniform(-2, 2) * st.sigma[i];
    }
    std::size_t base = score(st, e).argmax;
    ErrorStats scaled = st;
    for (auto& s : scaled.sigma) s *= 3.7;
    CHECK(score(scaled, e).argmax == base);
}

TEST_CASE("mean aggregation averages the per-feature scores") {
    ErrorStats st;
    st.mu = {0.0, 0.0};
    st.sigma = {1.0, 1.0};
    std::vector<double> e{1.0, 0.0};
    double p0 = 1.0 - std::exp(-0.5);
    Score mx = score(st, e, ScoreAggregation::max);
    Score mn = score(st, e, ScoreAggregation::mean);
    CHECK(mx.value == doctest::Approx(p0).epsilon(1e-15));
    CHECK(mn.value == doctest::Approx(p0 / 2.0).epsilon(1e-15));
}

TEST_CASE("score validates dimensions") {
    ErrorStats st;
    st.mu = {0.0};
    st.sigma = {1.0};
    CHECK_THROWS_AS(score(st, std::vector<double>{1.0, 2.0}), ConfigError);
}

TEST_CASE("threshold calibration on the default grid") {
    SUBCASE("clean maximum 0.55 with target 0 picks 0.6") {
        std::vector<double> scores{0.1, 0.32, 0.55, 0.2};
        CalibrationResult r = calibrate_threshold(scores);
        CHECK(r.threshold == 0.6);
        CHECK_FALSE(r.saturated);
    }
    SUBCASE("all-zero scores pick the smallest grid value") {
        CalibrationResult r = calibrate_threshold({0.0, 0.0, 0.0});
        CHECK(r.threshold == 0.1);
    }
    SUBCASE("band calibration example: max just under 0.6") {
        std::vector<double> scores{0.55, 0.59, 0.12, 0.44};
        CHECK(calibrate_threshold(scores).threshold == 0.6);
    }
    SUBCASE("nothing qualifies: largest grid value with saturation warning") {
        CalibrationResult r = calibrate_threshold({0.95});
        CHECK(r.threshold == 0.9);
        CHECK(r.saturated);
    }
    SUBCASE("fp target tolerates that many scores above") {
        std::vector<double> scores{0.95, 0.15, 0.15};
        CalibrationResult r = calibrate_threshold(scores, {0.1, 0.2, 0.9}, 1);
        CHECK(r.threshold == 0.2);
        CHECK_FALSE(r.saturated);
    }
    SUBCASE("empty grid rejected") {
        CHECK_THROWS_AS(calibrate_threshold({0.5}, {}, 0), ConfigError);
    }
    SUBCASE("unsorted grid rejected") {
        CHECK_THROWS_AS(calibrate_threshold({0.5}, {0.9, 0.1}, 0), ConfigError);
    }
    SUBCASE("a grid ending at the score ceiling never saturates") {
        double cap = std::nextafter(1.0, 0.0);
        CalibrationResult r = calibrate_threshold({0.5, cap}, {0.1, 0.9, cap}, 0);
        CHECK(r.threshold == cap);
        CHECK_FALSE(r.saturated);  // capped scores are not strictly above it
    }
}

TEST_CASE("raising the threshold never adds alarms") {
    Rng rng(305);
    DetectorProfile profile;
    profile.slice_id = "t";
    profile.model = zero_model();
    profile.scaler = identity_scaler();
    profile.stats.mu = std::vector<double>(80, -0.5);
    profile.stats.sigma = std::vector<double>(80, 0.05);

    std::vector<FeatureVector> stream;
    for (int i = 0; i < 60; ++i) {
        FeatureVector v;
        v.window_end_time = i;
        for (auto& x : v.values) x = 0.5 + rng.uniform(-0.2, 0.2);
        stream.push_back(v);
    }
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        profile.threshold = t;
        std::size_t n = detect(profile, stream).size();
        CHECK(n <= prev);
        prev = n;
    }
}

TEST_CASE("detect end to end with a zero model") {
    // error = -x_norm, so stats fitted on replicas of the base input make any
    // single-feature deviation stick out on exactly that feature.
    DetectorProfile profile;
    profile.slice_id = "2400000-2410000";
    profile.model = zero_model();
    profile.scaler = identity_scaler();
    profile.threshold = 0.9;

    Rng rng(307);
    std::vector<std::vector<double>> base_errors;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> e(80);
        for (auto& v : e) v = -0.5 + rng.uniform(-0.01, 0.01);
        base_errors.push_back(e);
    }
    profile.stats = fit_error_stats(base_errors);

    SUBCASE("clean replay stays quiet") {
        std::vector<FeatureVector> stream;
        for (int i = 0; i < 20; ++i) {
            FeatureVector v;
            v.window_end_time = 100.0 + i;
            for (std::size_t k = 0; k < 80; ++k)
                v.values[k] = 0.5 + rng.uniform(-0.005, 0.005);
            stream.push_back(v);
        }
        CHECK(detect(profile, stream).empty());
    }
    SUBCASE("a +10 sigma deviation on one feature raises that feature") {
        FeatureVector v;
        for (std::size_t k = 0; k < 80; ++k) v.values[k] = 0.5;
        v.values[42] = 0.5 + 10.0 * profile.stats.sigma[42];
        v.window_end_time = 777.0;
        auto alarms = detect(profile, {v});
        REQUIRE(alarms.size() == 1);
        CHECK(alarms[0].argmax_feature == 42);
        CHECK(alarms[0].score > 0.99);
        CHECK(alarms[0].time == 777.0);
        CHECK(alarms[0].slice_id == "2400000-2410000");
    }
    SUBCASE("empty stream gives an empty alarm stream") {
        CHECK(detect(profile, {}).empty());
    }
    SUBCASE("stream order is preserved") {
        std::vector<FeatureVector> stream;
        for (int i = 0; i < 5; ++i) {
            FeatureVector v;
            for (std::size_t k = 0; k < 80; ++k) v.values[k] = 0.9;  // far off
            v.window_end_time = i * 10.0;
            stream.push_back(v);
        }
        auto alarms = detect(profile, stream);
        REQUIRE(alarms.size() == 5);
        for (std::size_t i = 1; i < alarms.size(); ++i)
            CHECK(alarms[i].time > alarms[i - 1].time);
    }
    SUBCASE("stats dimension mismatch halts the stream") {
        profile.stats.mu.resize(40);
        profile.stats.sigma.resize(40);
        FeatureVector v;
        CHECK_THROWS_AS(detect(profile, {v}), ConfigError);
    }
}

TEST_CASE("profile JSON round-trip via referenced files") {
    std::string dir = test::scratch_dir("profile_io");
    DetectorProfile p;
    p.slice_id = "860000-870000";
    p.model = init_params(default_architecture(), 11);
    p.scaler = identity_scaler();
    p.threshold = 0.6;
    p.saturated = false;
    p.aggregation = ScoreAggregation::max;
    Rng rng(311);
    p.stats.mu.resize(80);
    p.stats.sigma.resize(80);
    for (std::size_t i = 0; i < 80; ++i) {
        p.stats.mu[i] = rng.uniform(-1, 1);
        p.stats.sigma[i] = rng.uniform(0.001, 1.0);
    }

    save_model(p.model, dir + "/model.json");
    {
        std::ofstream out(dir + "/scaler.json");
        out << scaler_to_json(p.scaler);
    }
    std::string doc = profile_to_json(p, "model.json", "scaler.json");
    DetectorProfile q = profile_from_json(doc, dir);
    CHECK(q.slice_id == p.slice_id);
    CHECK(q.threshold == p.threshold);
    CHECK(q.stats.mu == p.stats.mu);
    CHECK(q.stats.sigma == p.stats.sigma);

    Rng rng2(313);
    for (int trial = 0; trial < 10; ++trial) {
        FeatureVector v;
        for (auto& x : v.values) x = rng2.uniform(0, 1);
        auto a = score_stream(p, {v});
        auto b = score_stream(q, {v});
        CHECK(a[0].score == b[0].score);
    }
    CHECK_THROWS_AS(profile_from_json("{", dir), FormatError);
}

TEST_CASE("alarm CSV round-trip") {
    std::string dir = test::scratch_dir("alarm_io");
    std::vector<Alarm> alarms{{1000.5, "400000-500000", 0.75, 12},
                              {1010.25, "400000-500000", 0.9999999999, 79}};
    write_alarm_csv(dir + "/a.csv", alarms);
    auto back = read_alarm_csv(dir + "/a.csv");
    REQUIRE(back.size() == 2);
    CHECK(back[0].time == 1000.5);
    CHECK(back[0].slice_id == "400000-500000");
    CHECK(back[0].score == 0.75);
    CHECK(back[0].argmax_feature == 12);
    CHECK(back[1].score == 0.9999999999);
}
