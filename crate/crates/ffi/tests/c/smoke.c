#include <stdio.h>
#include <string.h>
#include "popfactor.h"

static const char *INSTANCE =
    "RP 4\n"
    "a1: a4 a2 a3\n"
    "a2: (a1 a4) a3\n"
    "a3: (a1 a4) a2\n"
    "a4: (a2 a3) a1\n";

int main(void) {
    PfInstance *inst = NULL;
    PfMatching *m = NULL;
    PfReport *r = NULL;
    int64_t num, den;
    bool inf;
    if (pf_instance_parse(INSTANCE, &inst) != PF_STATUS_OK) return 10;
    if (pf_matching_parse(inst, "a1 a4\na2 a3\n", &m) != PF_STATUS_OK) return 11;
    if (pf_unpopularity_factor(inst, m, PF_FAST_PATH_AUTO, &r) != PF_STATUS_OK) return 12;
    if (pf_report_factor(r, &num, &den, &inf) != PF_STATUS_OK) return 13;
    char *json = pf_report_json(r);
    printf("%lld/%lld %d %llu %s\n", (long long)num, (long long)den, (int)inf,
           (unsigned long long)pf_report_margin(r), json);
    pf_string_free(json);
    pf_report_free(r);
    pf_matching_free(m);
    if (pf_matching_parse(inst, "a1 a1\n", &m) != PF_STATUS_VALIDATION || m != NULL) return 14;
    if (strlen(pf_last_error()) == 0) return 15;
    pf_instance_free(inst);
    return 0;
}
