#pragma once

#include <array>

// Frozen t-distribution reference values, computed with mpmath at 50 digits
// (tests/data/gen_reference.py).

namespace tref {

inline constexpr std::array<double, 20> kTPoints{
    -8.0, -5.0, -3.0, -2.5, -2.0, -1.5, -1.0, -0.5, -0.25, -0.1,
    0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 5.0, 8.0};

struct CdfRow {
    double df;
    std::array<double, 20> cdf;
};

inline constexpr std::array<CdfRow, 6> kCdfTable{{
    {1.0, {0.039583424160565542, 0.062832958189001184, 0.10241638234956673,
           0.1211189415908434, 0.14758361765043327, 0.18716704181099882, 0.25,
           0.35241638234956673, 0.42202086962263067, 0.46827448256944643, 0.5,
           0.53172551743055357, 0.57797913037736933, 0.64758361765043327, 0.75,
           0.81283295818900118, 0.85241638234956673, 0.8788810584091566,
           0.93716704181099882, 0.96041657583943446}},
    {2.0, {0.0076340360826690691, 0.018874775675311863, 0.047732983133354566,
           0.064805860110755405, 0.091751709536136984, 0.13619656244550054,
           0.21132486540518712, 0.33333333333333333, 0.41296117202215108,
           0.46473271920707008, 0.5, 0.53526728079292992, 0.58703882797784892,
           0.66666666666666667, 0.78867513459481288, 0.86380343755449946,
           0.90824829046386302, 0.9351941398892446, 0.98112522432468814,
           0.99236596391733093}},
    {5.0, {0.00024645333028622204, 0.0020523579900266612, 0.015049623948731287,
           0.027245049671188121, 0.050969739414929178, 0.096951840121236716,
           0.18160873382456131, 0.3191494358204645, 0.40626706537206168,
           0.46211507057733019, 0.5, 0.53788492942266981, 0.59373293462793832,
           0.6808505641795355, 0.81839126617543869, 0.90304815987876328,
           0.94903026058507082, 0.97275495032881188, 0.99794764200997334,
           0.99975354666971378}},
    {10.0, {5.8874713948330799e-6, 0.00026866680137822631, 0.0066718275112847886,
            0.015723422118304402, 0.036694017385370183, 0.08225366322272009,
            0.17044656615102994, 0.31394680287148647, 0.40382410286830701,
            0.46116035928220416, 0.5, 0.53883964071779584, 0.59617589713169299,
            0.68605319712851353, 0.82955343384897006, 0.91774633677727991,
            0.96330598261462982, 0.9842765778816956, 0.99973133319862177,
            0.99999411252860517}},
    {30.0, {3.1329112378503795e-9, 1.1648342733503898e-5, 0.0026949820328259733,
            0.0090578245340333471, 0.027312522481491552, 0.072032964564323001,
            0.16265430771301495, 0.31036150244256364, 0.40214570454028755,
            0.46050480589513558, 0.5, 0.53949519410486442, 0.59785429545971245,
            0.68963849755743636, 0.83734569228698505, 0.927967035435677,
            0.97268747751850845, 0.99094217546596665, 0.9999883516572665,
            0.99999999686708876}},
    {100.0, {1.1364324038640403e-12, 1.2250867067519002e-6, 0.0017039576716647248,
             0.0070228945620385887, 0.02410608936556684, 0.068382529062344428,
             0.15986207789206168, 0.30908678291544329, 0.4015501060766102,
             0.46027226554792562, 0.5, 0.53972773445207438, 0.5984498939233898,
             0.69091321708455671, 0.84013792210793832, 0.93161747093765557,
             0.97589391063443316, 0.99297710543796141, 0.99999877491329325,
             0.99999999999886357}},
}};

inline constexpr std::array<double, 8> kProbs{0.55, 0.6, 0.75, 0.9,
                                              0.95, 0.975, 0.99, 0.995};

struct QuantRow {
    double df;
    std::array<double, 8> q;
};

inline constexpr std::array<QuantRow, 6> kQuantTable{{
    {1.0, {0.15838444032453629, 0.32491969623290633, 1.0, 3.0776835371752534,
           6.3137515146750431, 12.706204736174705, 31.820515953773958,
           63.656741162871581}},
    {2.0, {0.14213381090374029, 0.28867513459481288, 0.81649658092772603,
           1.8856180831641267, 2.9199855803537257, 4.3026527297494639,
           6.9645567342832742, 9.9248432009182931}},
    {5.0, {0.13217517523168726, 0.26718086570414513, 0.72668684380042265,
           1.4758840488244811, 2.0150483733330242, 2.5705818356363155,
           3.3649299989072186, 4.0321429835552281}},
    {10.0, {0.12889018929327379, 0.26018482949208024, 0.69981206131243163,
            1.3721836411103356, 1.8124611228116764, 2.2281388519862747,
            2.7637694581126962, 3.1692726726169512}},
    {30.0, {0.12672961313207359, 0.25560536495191277, 0.68275569332129255,
            1.3104150253913956, 1.6972608865939578, 2.0422724563012383,
            2.4572615424005914, 2.7499956535672253}},
    {100.0, {0.12598088204153967, 0.25402218245822782, 0.67695104301147148,
             1.290074761346516, 1.6602343260853396, 1.9839715185235523,
             2.3642173662384821, 2.6258905214380179}},
}};

}  // namespace tref
