#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <statecraft/statecraft.hpp>

// Drives the installed command-line binary as a subprocess. The binary path
// is baked in by the build so the test works from any working directory.
#ifndef STATECRAFT_CLI_PATH
#error "STATECRAFT_CLI_PATH must be defined by the build"
#endif

namespace sc = statecraft;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

const std::string& workspace() {
    static const std::string ws = [] {
        const std::string dir = (fs::temp_directory_path() / "statecraft_cli_ws").string();
        fs::create_directories(dir);
        return dir;
    }();
    return ws;
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string out = workspace() + "/stdout.txt";
    const std::string err = workspace() + "/stderr.txt";
    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + "\"" + STATECRAFT_CLI_PATH + "\" " + args +
                            " >\"" + out + "\" 2>\"" + err + "\"";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

// dataset + manifest shared across the file, created once
struct CliFixture {
    std::string data, manifest;

    CliFixture() {
        data = workspace() + "/data";
        manifest = workspace() + "/manifest.json";
        if (!fs::exists(data)) {
            sc::SyntheticSpec spec;
            spec.classes = 3;
            spec.per_class = 8;
            spec.hw = 16;
            spec.seed = 41;
            sc::generate_synthetic_dataset(data, spec);
        }
        if (!fs::exists(manifest)) {
            const CliResult r = run_cli("split --data \"" + data + "\" --out \"" + manifest +
                                        "\" --train 0.5 --val 0.25 --test 0.25 --seed 3");
            if (r.code != 0) throw std::runtime_error("fixture split failed: " + r.err);
        }
    }
};

CliFixture& fx() {
    static CliFixture f;
    return f;
}

// every run below is capped hard; the point is the plumbing, not the model
std::string train_args(const std::string& out_dir, std::uint64_t seed) {
    return "train --data \"" + fx().data + "\" --manifest \"" + fx().manifest + "\" --out \"" + out_dir +
           "\" --model mini_inception --input-hw 16 --classes 3 --batch-size 4 --epochs1 1 --epochs2 1"
           " --max-batches 2 --seed " +
           std::to_string(seed) + " --deterministic --no-augment";
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run_cli("--help").code, 0);
    EXPECT_EQ(run_cli("").code, 2);               // a subcommand is required
    EXPECT_EQ(run_cli("frobnicate").code, 2);     // unknown subcommand
    EXPECT_EQ(run_cli("split").code, 2);          // missing required --data
    const CliResult r = run_cli("train --manifest \"" + fx().manifest + "\"");
    EXPECT_EQ(r.code, 2);                         // config error: no data dir
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, SplitWritesAReadableManifest) {
    const std::string out = workspace() + "/resplit.json";
    const CliResult r =
        run_cli("split --data \"" + fx().data + "\" --out \"" + out + "\" --train 0.5 --val 0.25 --test 0.25 --seed 3");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("manifest: "), std::string::npos);
    EXPECT_NE(r.out.find("total"), std::string::npos);

    const sc::Dataset ds = sc::scan_directory(fx().data);
    const sc::SplitResult split = sc::read_split_manifest(out, ds);
    EXPECT_EQ(split.train.size() + split.val.size() + split.test.size(), ds.items.size());
    // identical command, identical file
    EXPECT_EQ(slurp(out), slurp(fx().manifest));

    EXPECT_EQ(run_cli("split --data /no/such/dir").code, 3);
    EXPECT_EQ(run_cli("split --data \"" + fx().data + "\" --train 0.9 --val 0.3 --test 0.2").code, 2);
}

TEST(Cli, SeedEnvOverridesTheFlag) {
    const std::string a = workspace() + "/seed_env.json";
    const std::string b = workspace() + "/seed_flag.json";
    ASSERT_EQ(run_cli("split --data \"" + fx().data + "\" --out \"" + a + "\" --seed 3", "STATECRAFT_SEED=123").code, 0);
    ASSERT_EQ(run_cli("split --data \"" + fx().data + "\" --out \"" + b + "\" --seed 123").code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(run_cli("split --data \"" + fx().data + "\"", "STATECRAFT_SEED=notanumber").code, 2);
}

TEST(Cli, ParamsPrintsTheCanonicalCounts) {
    const CliResult all = run_cli("params --boundary all");
    ASSERT_EQ(all.code, 0) << all.err;
    EXPECT_NE(all.out.find("layers: 318 (backbone 311)"), std::string::npos);
    EXPECT_NE(all.out.find("total params:         40693547"), std::string::npos);
    EXPECT_NE(all.out.find("trainable params:     18888715"), std::string::npos);

    const CliResult m7 = run_cli("params --boundary mixed7");
    EXPECT_NE(m7.out.find("trainable params:     33840651"), std::string::npos);
    const CliResult m8 = run_cli("params --boundary mixed8");
    EXPECT_NE(m8.out.find("trainable params:     31700619"), std::string::npos);
    const CliResult m9 = run_cli("params --boundary mixed9");
    EXPECT_NE(m9.out.find("trainable params:     30003595"), std::string::npos);

    EXPECT_EQ(run_cli("params --boundary nonsense").code, 2);
    EXPECT_EQ(run_cli("params --model mini_inception --boundary all").code, 0);
}

TEST(Cli, PretrainTrainEvaluatePredictPipeline) {
    const std::string pre_data = workspace() + "/pre_data";
    const std::string backbone = workspace() + "/backbone.bin";
    const CliResult pre = run_cli(
        "pretrain --data \"" + pre_data + "\" --out \"" + backbone +
        "\" --synthetic --synthetic-classes 3 --synthetic-per-class 6 --synthetic-hw 16"
        " --input-hw 16 --epochs 1 --batch-size 4 --max-batches 2 --seed 7 --deterministic");
    ASSERT_EQ(pre.code, 0) << pre.err;
    ASSERT_TRUE(fs::exists(backbone));
    // the archive holds backbone layers only; the probe head is dropped
    for (const auto& t : sc::read_archive(backbone)) EXPECT_EQ(t.name.find("probe_"), std::string::npos) << t.name;

    const std::string run = workspace() + "/run1";
    const CliResult tr = run_cli(train_args(run, 5) + " --backbone \"" + backbone + "\"");
    ASSERT_EQ(tr.code, 0) << tr.err;
    for (const char* f :
         {"resolved_config.json", "train_log.jsonl", "report.csv", "report.json", "weights.bin"})
        EXPECT_TRUE(fs::exists(run + "/" + std::string(f))) << f;

    // the resolved config pins the stage-2 boundary to a concrete index
    const auto cfg = nlohmann::json::parse(slurp(run + "/resolved_config.json"));
    const std::string boundary = cfg["stage2"]["freeze_boundary"].get<std::string>();
    EXPECT_TRUE(!boundary.empty() && boundary.find_first_not_of("0123456789") == std::string::npos) << boundary;

    const auto report = nlohmann::json::parse(slurp(run + "/report.json"));
    EXPECT_EQ(report["schema"], "statecraft-train/1");
    EXPECT_EQ(report["history"].size(), 2u);
    EXPECT_FALSE(report["stage1_aborted"].get<bool>());

    const CliResult ev = run_cli("evaluate --data \"" + fx().data + "\" --manifest \"" + fx().manifest +
                                 "\" --out \"" + run + "\" --model mini_inception --input-hw 16 --classes 3" +
                                 " --weights \"" + run + "/weights.bin\" --subset test");
    ASSERT_EQ(ev.code, 0) << ev.err;
    EXPECT_NE(ev.out.find("accuracy:"), std::string::npos);
    EXPECT_NE(ev.out.find("c00_solid"), std::string::npos);
    EXPECT_TRUE(fs::exists(run + "/confusion_test.csv"));
    std::istringstream conf(slurp(run + "/confusion_test.csv"));
    std::string header;
    std::getline(conf, header);
    EXPECT_EQ(header, "true_class,c00_solid,c01_hstripes,c02_vstripes");

    // predict on one known image; probabilities print in descending order
    const std::string img = fx().data + "/c00_solid/img_000.png";
    ASSERT_TRUE(fs::exists(img));
    const CliResult pr = run_cli("predict --data \"" + fx().data +
                                 "\" --model mini_inception --input-hw 16 --classes 3 --weights \"" + run +
                                 "/weights.bin\" --image \"" + img + "\" --topk 2");
    ASSERT_EQ(pr.code, 0) << pr.err;
    std::istringstream lines(pr.out);
    std::string name1, name2;
    double p1 = 0, p2 = 0;
    lines >> name1 >> p1 >> name2 >> p2;
    EXPECT_GE(p1, p2);
    EXPECT_NE(name1, name2);
    EXPECT_EQ(name1.substr(0, 1), "c");

    // bad inputs map to the documented exit codes
    EXPECT_EQ(run_cli("evaluate --data \"" + fx().data + "\" --manifest \"" + fx().manifest +
                      "\" --model mini_inception --input-hw 16 --classes 3 --weights /no/such.bin")
                  .code,
              3);
    EXPECT_EQ(run_cli("evaluate --data \"" + fx().data + "\" --manifest \"" + fx().manifest +
                      "\" --model mini_inception --input-hw 16 --classes 3 --weights \"" + run +
                      "/weights.bin\" --subset holdout")
                  .code,
              3);
    EXPECT_EQ(run_cli("pretrain --data /no/such/dir --out \"" + workspace() + "/x.bin\"").code, 2);
}

TEST(Cli, DeterministicTrainingRunsAreByteIdentical) {
    const std::string a = workspace() + "/det_a";
    const std::string b = workspace() + "/det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const CliResult ra = run_cli(train_args(a, 17));
    const CliResult rb = run_cli(train_args(b, 17));
    ASSERT_EQ(ra.code, 0) << ra.err;
    ASSERT_EQ(rb.code, 0) << rb.err;
    // resolved_config.json is excluded: it embeds out_dir, which differs by
    // construction between the two runs
    for (const char* f : {"train_log.jsonl", "report.csv", "report.json", "weights.bin"}) {
        const std::string fa = slurp(a + "/" + std::string(f));
        EXPECT_FALSE(fa.empty()) << f;
        EXPECT_EQ(fa, slurp(b + "/" + std::string(f))) << f;
    }
    EXPECT_FALSE(slurp(a + "/resolved_config.json").empty());
    // a different seed changes the outcome
    const std::string c = workspace() + "/det_c";
    ASSERT_EQ(run_cli(train_args(c, 18)).code, 0);
    EXPECT_NE(slurp(a + "/weights.bin"), slurp(c + "/weights.bin"));
}

TEST(Cli, AblateWritesTableAndCurves) {
    const std::string out = workspace() + "/ablate_out";
    fs::remove_all(out);
    const CliResult r = run_cli(
        "ablate --data \"" + fx().data + "\" --manifest \"" + fx().manifest + "\" --out \"" + out +
        "\" --model mini_inception --input-hw 16 --classes 3 --batch-size 4 --epochs1 1 --epochs2 1 --max-batches 1"
        " --seed 5 --deterministic --no-augment --axis optimizer --setting adam --setting sgd");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("ablation: 2 rows (0 failed)"), std::string::npos);
    EXPECT_TRUE(fs::exists(out + "/report.csv"));
    EXPECT_TRUE(fs::exists(out + "/curves/adam.csv"));
    EXPECT_TRUE(fs::exists(out + "/curves/sgd.csv"));
    const sc::AblationTable t = sc::read_ablation_json(out + "/report.json");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0].setting, "adam");
    EXPECT_EQ(t.rows[1].setting, "sgd");

    EXPECT_EQ(run_cli("ablate --data \"" + fx().data + "\" --manifest \"" + fx().manifest +
                      "\" --model mini_inception --input-hw 16 --classes 3 --axis optimizer --setting adam")
                  .code,
              2);  // needs at least two settings
}
