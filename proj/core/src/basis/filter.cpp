#include "wigner/basis/filter.hpp"

#include <array>
#include <string>

#include "wigner/error.hpp"

namespace wigner {

namespace {

constexpr std::array<int, 10> kOrders{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};

// Minimum-phase factors of the Daubechies half-band polynomial, computed to
// 25 significant digits and rounded to double.
constexpr std::array<double, 2> kD2{
    0.7071067811865475244008444, 0.7071067811865475244008444};

constexpr std::array<double, 4> kD4{
    0.4829629131445341433748716, 0.8365163037378079055752938,
    0.2241438680420133810259728, -0.1294095225512603811744494};

constexpr std::array<double, 6> kD6{
    0.3326705529500826159985116,  0.8068915093110925764944936,
    0.4598775021184915700951519,  -0.1350110200102545886963899,
    -0.08544127388202666169281917, 0.03522629188570953660274066};

constexpr std::array<double, 8> kD8{
    0.2303778133088965008632912,  0.714846570552915647089922,
    0.6308807679298589078817163,  -0.02798376941685985421141375,
    -0.1870348117190930840795707, 0.03084138183556076362721936,
    0.03288301166688519973540751, -0.01059740178506903210488321};

constexpr std::array<double, 10> kD10{
    0.1601023979741929144807237,   0.6038292697971896705401193,
    0.7243085284377729277280712,   0.1384281459013207315053971,
    -0.2422948870663820318625714,  -0.03224486958463837464847976,
    0.07757149384004571352313049,  -0.006241490212798274274190519,
    -0.01258075199908199946850974, 0.003335725285473771277998183};

constexpr std::array<double, 12> kD12{
    0.1115407433501094636213239, 0.4946238903984530856772042,
    0.7511339080210953506789345, 0.3152503517091976290859897,
    -0.2262646939654398200763145, -0.1297668675672619355622896,
    0.09750160558732304910234355, 0.02752286553030572862554084,
    -0.03158203931748602956507908, 0.0005538422011614961392519184,
    0.004777257510945510639635975, -0.001077301085308479564852622};

constexpr std::array<double, 14> kD14{
    0.07785205408500917901996352, 0.3965393194819173065390004,
    0.7291320908462351199169431, 0.4697822874051931224715912,
    -0.1439060039285649754050684, -0.2240361849938749826381404,
    0.07130921926683026475087657, 0.08061260915108307191292248,
    -0.03802993693501441357959206, -0.01657454163066688065410767,
    0.01255099855609984061298989, 0.0004295779729213665211321291,
    -0.001801640704047490915268263, 0.0003537137999745202484462958};

constexpr std::array<double, 16> kD16{
    0.05441584224310400995500941, 0.3128715909142999706591624,
    0.6756307362972898068078008, 0.5853546836542067127712655,
    -0.01582910525634930566738055, -0.2840155429615469265162031,
    0.00047248457391328277036059, 0.1287474266204784588570293,
    -0.01736930100180754616961615, -0.04408825393079475150676372,
    0.01398102791739828164872293, 0.008746094047405776716382743,
    -0.004870352993451574310422182, -0.0003917403733769470462980804,
    0.0006754494064505693663695476, -0.0001174767841247695337306282};

constexpr std::array<double, 18> kD18{
    0.03807794736387834658869766, 0.2438346746125903537320416,
    0.6048231236901111119030769, 0.6572880780513005380782126,
    0.1331973858250075761909549, -0.2932737832791749088064032,
    -0.09684078322297646051350813, 0.1485407493381063801350727,
    0.0307256814793333792123174, -0.06763282906132997367564227,
    0.0002509471148314519575871897, 0.02236166212367909720537378,
    -0.004723204757751397277925708, -0.004281503682463429834496795,
    0.001847646883056226476619129, 0.0002303857635231959672052164,
    -0.0002519631889427101369749887, 0.00003934732031627159948068988};

constexpr std::array<double, 20> kD20{
    0.02667005790055555358661745, 0.188176800077691489020893,
    0.5272011889317255864817448, 0.6884590394536035657418718,
    0.281172343660577460748727, -0.2498464243273153794161019,
    -0.1959462743773770435042993, 0.1273693403357932600826772,
    0.09305736460357235116035229, -0.07139414716639708714533609,
    -0.02945753682187581285828324, 0.03321267405934100173976365,
    0.003606553566956169655423291, -0.01073317548333057504431811,
    0.001395351747052901165789318, 0.001992405295185056117158742,
    -0.000685856694959711626561371, -0.000116466855129285450951481,
    0.00009358867032006959133405013, -0.00001326420289452124481243668};

template <std::size_t N>
FilterCoefficients make(const std::array<double, N>& taps) {
  return FilterCoefficients{static_cast<int>(N), std::vector<double>(taps.begin(), taps.end())};
}

}  // namespace

double FilterCoefficients::highpass(int k) const {
  const double h = taps[static_cast<std::size_t>(order - 1 - k)];
  return (k % 2 == 0) ? h : -h;
}

std::span<const int> supported_filter_orders() { return kOrders; }

FilterCoefficients daubechies_filter(int order) {
  switch (order) {
    case 2: return make(kD2);
    case 4: return make(kD4);
    case 6: return make(kD6);
    case 8: return make(kD8);
    case 10: return make(kD10);
    case 12: return make(kD12);
    case 14: return make(kD14);
    case 16: return make(kD16);
    case 18: return make(kD18);
    case 20: return make(kD20);
    default:
      throw ConfigError("unsupported Daubechies filter order " + std::to_string(order) +
                        "; supported orders are the even numbers 2 to 20");
  }
}

}  // namespace wigner
