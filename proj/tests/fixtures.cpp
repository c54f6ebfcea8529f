#include "fixtures.hpp"

#include <cstdio>

namespace facetab::testing {

namespace {

std::string subject_id(char arm, int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c-%03d", arm, i);
    return buf;
}

struct TermSpec {
    std::string bodysys;
    std::string term;
    int first_subject;
    int last_subject;  // inclusive
};

struct ArmSpec {
    char tag;
    std::string arm;
    int n_subjects;
    std::vector<TermSpec> terms;
    // total event rows per body system, distributed round-robin over the
    // (term, subject) pairs on top of one event each
    std::vector<std::pair<std::string, int>> event_totals;
};

const char* kGI = "GASTROINTESTINAL";
const char* kMS = "MUSCULOSKELETAL AND CONNECTIVE TISSUE";

}  // namespace

AeFixture make_ae_fixture() {
    const std::vector<ArmSpec> arms = {
        {'A',
         "ARM A",
         146,
         {
             {kGI, "ABDOMINAL DISCOMFORT", 1, 106},
             {kGI, "ABDOMINAL FULLNESS DUE TO GAS", 8, 114},
             {kGI, "GINGIVAL BLEEDING", 1, 92},
             {kGI, "NAUSEA (INTERMITTENT)", 5, 114},
             {kMS, "BACK PAIN", 2, 74},
             {kMS, "WEAKNESS", 4, 114},
         },
         {{kGI, 1344}, {kMS, 716}}},
        {'B',
         "ARM B",
         154,
         {
             {kGI, "ABDOMINAL DISCOMFORT", 1, 84},
             {kGI, "ABDOMINAL FULLNESS DUE TO GAS", 14, 111},
             {kGI, "GINGIVAL BLEEDING", 1, 73},
             {kGI, "NAUSEA (INTERMITTENT)", 3, 111},
             {kMS, "BACK PAIN", 2, 48},
             {kMS, "WEAKNESS", 3, 125},
         },
         {{kGI, 675}, {kMS, 383}}},
    };

    const std::vector<std::string> arm_levels = {"ARM A", "ARM B"};
    const std::vector<std::string> bodysys_levels = {kGI, kMS};
    const std::vector<std::string> term_levels = {
        "ABDOMINAL DISCOMFORT", "ABDOMINAL FULLNESS DUE TO GAS", "GINGIVAL BLEEDING",
        "NAUSEA (INTERMITTENT)", "BACK PAIN",      "WEAKNESS"};

    Column::StrValues adsl_id;
    Column::StrValues adsl_arm;
    Column::StrValues ae_id;
    Column::StrValues ae_arm;
    Column::StrValues ae_bodysys;
    Column::StrValues ae_term;

    for (const auto& arm : arms) {
        for (int i = 1; i <= arm.n_subjects; ++i) {
            adsl_id.push_back(subject_id(arm.tag, i));
            adsl_arm.push_back(arm.arm);
        }
        for (const auto& [bodysys, total] : arm.event_totals) {
            // (term, subject) pairs in term order, subjects ascending
            std::vector<std::pair<const TermSpec*, int>> pairs;
            for (const auto& term : arm.terms) {
                if (term.bodysys != bodysys) continue;
                for (int s = term.first_subject; s <= term.last_subject; ++s) {
                    pairs.emplace_back(&term, s);
                }
            }
            std::vector<int> events(pairs.size(), 1);
            const int extras = total - static_cast<int>(pairs.size());
            for (int k = 0; k < extras; ++k) events[static_cast<std::size_t>(k) % pairs.size()]++;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                for (int e = 0; e < events[p]; ++e) {
                    ae_id.push_back(subject_id(arm.tag, pairs[p].second));
                    ae_arm.push_back(arm.arm);
                    ae_bodysys.push_back(pairs[p].first->bodysys);
                    ae_term.push_back(pairs[p].first->term);
                }
            }
        }
    }

    AeFixture out;
    out.adsl = Dataset({Column::text("USUBJID", std::move(adsl_id)),
                        Column::categorical("ARM", std::move(adsl_arm), arm_levels)});
    out.adae = Dataset({Column::text("USUBJID", std::move(ae_id)),
                        Column::categorical("ARM", std::move(ae_arm), arm_levels),
                        Column::categorical("AEBODSYS", std::move(ae_bodysys), bodysys_levels),
                        Column::categorical("AEDECOD", std::move(ae_term), term_levels)});
    return out;
}

Dataset make_bep_fixture() {
    Column::StrValues id;
    Column::StrValues armcd;
    Column::StrValues bep;
    Column::StrValues sex;
    Column::NumValues age;
    Column::NumValues bmrkr1;

    const struct {
        std::string arm;
        int n;
        int n_bep;
    } arms[] = {{"ARM A", 96, 41}, {"ARM B", 94, 48}};

    int subject = 0;
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i < arms[a].n; ++i) {
            ++subject;
            id.push_back(subject_id('S', subject));
            armcd.push_back(arms[a].arm);
            bep.push_back(i < arms[a].n_bep ? "BEP" : "Non-BEP");
            sex.push_back((i % 5) < 3 ? "F" : "M");
            age.push_back(23.0 + ((i * 17 + a * 7) % 36) + ((i % 2) ? 0.5 : 0.0));
            bmrkr1.push_back(0.4 + ((i * 29 + a * 11) % 160) / 10.0);
        }
    }

    return Dataset({Column::text("USUBJID", std::move(id)),
                    Column::categorical("ARMCD", std::move(armcd), {"ARM A", "ARM B"}),
                    Column::categorical("BEP", std::move(bep), {"BEP", "Non-BEP"}),
                    Column::categorical("SEX", std::move(sex), {"F", "M"}),
                    Column::numeric("AGE", std::move(age)),
                    Column::numeric("BMRKR1", std::move(bmrkr1))});
}

Dataset make_refgroup_fixture() {
    Column::StrValues id;
    Column::StrValues armcd;
    Column::StrValues rsp;
    Column::BoolValues is_rsp;

    const struct {
        std::string arm;
        int n;
        int responders;
    } arms[] = {{"ARM A", 134, 114}, {"ARM B", 134, 100}, {"ARM C", 132, 112}};

    int subject = 0;
    for (const auto& arm : arms) {
        for (int i = 0; i < arm.n; ++i) {
            ++subject;
            id.push_back(subject_id('R', subject));
            armcd.push_back(arm.arm);
            const bool responded = i < arm.responders;
            rsp.push_back(responded ? "Responders" : "Non-Responders");
            is_rsp.push_back(responded);
        }
    }

    return Dataset(
        {Column::text("USUBJID", std::move(id)),
         Column::categorical("ARMCD", std::move(armcd), {"ARM A", "ARM B", "ARM C"}),
         Column::categorical("rsp", std::move(rsp), {"Responders", "Non-Responders"}),
         Column::boolean("is_rsp", std::move(is_rsp))});
}

Dataset make_structure_fixture() {
    Column::StrValues v1;
    Column::StrValues v2;
    Column::StrValues v3;
    Column::StrValues v4;
    Column::NumValues y;
    Column::StrValues id;

    int n = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) {
                    for (int rep = 0; rep < 3; ++rep) {
                        ++n;
                        v1.push_back(a ? "lvl1b" : "lvl1a");
                        v2.push_back(b ? "lvl2b" : "lvl2a");
                        v3.push_back(c ? "lvl3b" : "lvl3a");
                        v4.push_back(d ? "lvl4b" : "lvl4a");
                        y.push_back(static_cast<double>(n % 7) + 0.5);
                        id.push_back(subject_id('X', n));
                    }
                }
            }
        }
    }

    return Dataset({Column::categorical("V1", std::move(v1), {"lvl1a", "lvl1b"}),
                    Column::categorical("V2", std::move(v2), {"lvl2a", "lvl2b"}),
                    Column::categorical("V3", std::move(v3), {"lvl3a", "lvl3b"}),
                    Column::categorical("V4", std::move(v4), {"lvl4a", "lvl4b"}),
                    Column::numeric("y", std::move(y)),
                    Column::text("id", std::move(id))});
}

}  // namespace facetab::testing
