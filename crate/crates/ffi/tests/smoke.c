#include <math.h>
#include <stdio.h>
#include <string.h>

#include "flat_torus.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    double d = 0.0;
    CHECK(ft_distance(FT_METRIC_LAMBDA, 0.0, 1.0, 0.0, 2.0, 500, &d) == FT_STATUS_OK);
    CHECK(fabs(d - 0.5 * log(2.0)) < 1e-12);

    CHECK(ft_distance(FT_METRIC_LAMBDA, 0.0, -1.0, 0.0, 2.0, 500, &d) == FT_STATUS_INVALID_POINT);
    CHECK(strstr(ft_last_error_message(), "upper half-plane") != NULL);

    FtTorus *torus = NULL;
    CHECK(ft_torus_new(0.0, 2.0, FT_NORMALIZATION_UNIT_AREA, &torus) == FT_STATUS_OK);
    int64_t m = 0, n = 0;
    double len = 0.0;
    CHECK(ft_torus_systole(torus, &m, &n, &len) == FT_STATUS_OK);
    CHECK(m == 1 && n == 0 && fabs(len - sqrt(0.5)) < 1e-15);
    ft_torus_free(torus);

    FtStretchMap *map = NULL;
    CHECK(ft_stretch_map_new(2.0, 0.1, 0.9, &map) == FT_STATUS_INVALID_FAMILY);
    CHECK(map == NULL);
    CHECK(strstr(ft_last_error_message(), "delta <") != NULL);

    FtReport *report = NULL;
    CHECK(ft_report_new(0.0, 1.0, 1.0, 1.0, 50, &report) == FT_STATUS_OK);
    double teich = 0.0;
    CHECK(ft_report_get(report, FT_REPORT_FIELD_TEICH, &teich) == FT_STATUS_OK);
    CHECK(fabs(teich - log((1.0 + sqrt(5.0)) / 2.0)) < 1e-12);
    char *json = NULL;
    CHECK(ft_report_to_json(report, &json) == FT_STATUS_OK);
    CHECK(strstr(json, "\"lambda\"") != NULL);
    ft_string_free(json);
    ft_report_free(report);

    printf("ok %s\n", ft_version());
    return 0;
}
