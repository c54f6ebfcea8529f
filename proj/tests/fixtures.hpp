#pragma once

#include "facetab/dataset.hpp"

namespace facetab::testing {

// Adverse-event style fixture pair: a subject-level dataset (USUBJID, ARM;
// 146 + 154 subjects) and an event-level dataset (USUBJID, ARM, AEBODSYS,
// AEDECOD) engineered so the per-arm event totals are 2060 / 1058 with
// 1344 / 675 of them gastrointestinal.
struct AeFixture {
    Dataset adsl;
    Dataset adae;
};
AeFixture make_ae_fixture();

// Subject-level demographics fixture: 190 subjects, ARM A 96 (41 BEP) and
// ARM B 94 (48 BEP), with SEX, AGE and BMRKR1.
Dataset make_bep_fixture();

// Response fixture: ARMCD with 134/134/132 subjects, categorical rsp
// (Responders first) and boolean is_rsp; 114 responders in ARM A.
Dataset make_refgroup_fixture();

// Small four-variable faceting fixture (V1, V2, V3, V4 with levels
// lvl<k>a / lvl<k>b, a numeric y and an id).
Dataset make_structure_fixture();

}  // namespace facetab::testing
