#include <stdio.h>
#include <string.h>
#include "nullmove.h"

int main(void) {
    NmPosition *pos = NULL;
    if (nm_position_from_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1", &pos) != NM_STATUS_OK) return 1;
    uint64_t n = 0;
    if (nm_perft(pos, 2, &n) != NM_STATUS_OK) return 2;
    NmSearchResult *res = NULL;
    if (nm_search(pos, "verified:3", 3, 0, &res) != NM_STATUS_OK) return 3;
    char mv[8];
    if (nm_search_result_best_move(res, mv, sizeof mv, NULL) != NM_STATUS_OK) return 4;
    printf("%llu %s %d\n", (unsigned long long)n, mv, nm_search_result_value(res));
    nm_search_result_free(res);
    nm_position_free(pos);
    return strcmp(mv, "a1a8") == 0 ? 0 : 5;
}
