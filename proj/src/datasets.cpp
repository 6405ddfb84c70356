#include "ctreserve/triangle.hpp"

namespace ctreserve {

namespace {

// General liability triangle, 10 accident years.
const std::vector<std::vector<double>> kTaylorAshe = {
    {357848, 1124788, 1735330, 2218270, 2745596, 3319994, 3466336, 3606286, 3833515, 3901463},
    {352118, 1236139, 2170033, 3353322, 3799067, 4120063, 4647867, 4914039, 5339085},
    {290507, 1292306, 2218525, 3235179, 3985995, 4132918, 4628910, 4909315},
    {310608, 1418858, 2195047, 3757447, 4029929, 4381982, 4588268},
    {443160, 1136350, 2128333, 2897821, 3402672, 3873311},
    {396132, 1333217, 2180715, 2985752, 3691712},
    {440832, 1288463, 2419861, 3483130},
    {359480, 1421128, 2864494},
    {376686, 1363294},
    {344014},
};

// Mortgage guarantee triangle, 9 accident years.
const std::vector<std::vector<double>> kMortgage = {
    {58046, 127970, 476599, 1027692, 1360489, 1647310, 1819179, 1906852, 1950105},
    {24492, 141767, 984288, 2142656, 2961978, 3683940, 4048898, 4115760},
    {32848, 274682, 1522637, 3203427, 4445927, 5158781, 5342585},
    {21439, 529828, 2900301, 4999019, 6460112, 6853904},
    {40397, 763394, 2920745, 4989572, 5648563},
    {90748, 951994, 4210640, 5866482},
    {62096, 868480, 1954797},
    {24983, 284441},
    {13121},
};

}  // namespace

Triangle builtin_dataset(std::string_view name) {
    if (name == "taylor_ashe") return Triangle::from_rows(kTaylorAshe, "taylor_ashe");
    if (name == "mortgage") return Triangle::from_rows(kMortgage, "mortgage");
    throw TriangleError(TriangleError::Kind::unknown_dataset, 0, 0,
                        "unknown dataset '" + std::string(name) +
                            "' (available: taylor_ashe, mortgage)");
}

std::vector<std::string> builtin_dataset_names() { return {"taylor_ashe", "mortgage"}; }

}  // namespace ctreserve
