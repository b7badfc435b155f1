#include "stackcast/hours.hpp"

#include <cstdio>

#include "stackcast/errors.hpp"

namespace stackcast {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

HourStamp make_hour(int year, unsigned month, unsigned day, int hour) {
    return days_from_civil(year, month, day) * 24 + hour;
}

HourStamp parse_hour(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep = 0;
    int n = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &s);
    if (n < 6 || (sep != 'T' && sep != ' '))
        throw SchemaMismatch("unparseable timestamp: '" + text + "'");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23)
        throw SchemaMismatch("timestamp out of range: '" + text + "'");
    if (mi != 0 || s != 0)
        throw SchemaMismatch("timestamp not on the hour: '" + text + "'");
    return make_hour(y, static_cast<unsigned>(mo), static_cast<unsigned>(d), h);
}

std::string format_hour(HourStamp h) {
    int y;
    unsigned m, d;
    civil_from_days(day_of(h), y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:00:00Z", y, m, d, hour_of_day(h));
    return buf;
}

}  // namespace stackcast
