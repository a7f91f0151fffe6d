"""
Weekdays and year-less dates
============================

Two small calendar rules decide most bare dates.  A weekday name resolves
to the one date with that weekday inside a seven-day window centred on the
DCT.  A month and day without a year is put in the future only if it falls
within ``f`` days of the DCT (14 by default); otherwise it is the most
recent past occurrence.
"""

import datetime

from timexlink.normalizer import NormalizerConfig, resolve_month_day, resolve_weekday

dct = datetime.date(1997, 6, 12)  # a Thursday
print("DCT", dct, dct.strftime("%A"))

# the window runs from Monday 9th to Sunday 15th
for name in ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]:
    print(f"{name:<10} -> {resolve_weekday(name, dct).value}")

# June 20 is 8 days ahead, so it stays in the future; June 30 is 18 days
# ahead, which is past the limit, so it snaps back a year
for month, day in [(6, 20), (6, 26), (6, 27), (6, 30), (4, 17)]:
    print(f"{month:02d}-{day:02d} f=14 -> {resolve_month_day(month, day, dct).value}")

# widening f moves the cut-off
print("06-30 f=30 ->", resolve_month_day(6, 30, dct, NormalizerConfig(f_days=30)).value)
