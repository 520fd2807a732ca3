#include <stdio.h>
#include "mph.h"

int main(void) {
    MphSizePair *cube = NULL, *sphere = NULL;
    MphDiagram *dc = NULL, *ds = NULL;
    const double l[2] = {1.0, 1.0}, b[2] = {0.0, 0.0};
    double d = 0.0;

    if (mph_size_pair_from_shape("cube_boundary", 0, NULL, &cube) != MPH_STATUS_OK ||
        mph_size_pair_from_shape("sphere", 0, NULL, &sphere) != MPH_STATUS_OK ||
        mph_slice_diagram(cube, l, b, 2, 0, 2, &dc) != MPH_STATUS_OK ||
        mph_slice_diagram(sphere, l, b, 2, 0, 2, &ds) != MPH_STATUS_OK ||
        mph_bottleneck(dc, ds, &d) != MPH_STATUS_OK) {
        fprintf(stderr, "error: %s\n", mph_last_error());
        return 1;
    }
    printf("degree-0 matching distance: %.6f\n", d);

    mph_diagram_free(dc);
    mph_diagram_free(ds);
    mph_size_pair_free(cube);
    mph_size_pair_free(sphere);
    return 0;
}
