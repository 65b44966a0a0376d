"""Generated by tools/fit_rs_tail.py; do not edit by hand.

Chebyshev coefficients of the fitted Riemann-Siegel tail profiles
C4..C7 on z in [-1, 1]."""

TAIL_CHEB = (
    (0.0001669493575040733, 1.8502010992144532e-06, -0.00022420860030034214, -2.4227234393627226e-08,
        6.0440439932076185e-05, 4.496990249207364e-06, -2.191441203509212e-05, 1.2422058642597144e-05,
        2.6796532735000444e-06, 2.3801895593456547e-07, -6.099272932236172e-06, 1.7821278266663407e-06,
        -7.864097443625505e-06, -1.7900075470045674e-06, -9.398611774682592e-07, -6.9259856018300855e-06,
        7.5163256603092355e-06, 3.9483271508895485e-06, 5.034108634366105e-06, -6.540978248536002e-07,
        2.6794341809279822e-06, 6.5579562780834105e-06, -3.1900124938988327e-06, 1.0306433058441335e-07,
        -4.849723085242681e-06, -2.0793618882871918e-06, 1.1498720021737176e-05, 3.5619744781773237e-06,
        -7.624212479731321e-06, 5.114720907059749e-06, -3.236159248795923e-06, 2.338884892345006e-06,
        -6.72508642423708e-06, 9.609300496956393e-06, -5.1375147619214575e-06, 2.7649259019031364e-06,
        7.689331717509554e-06, -4.001853838039744e-06, -2.4295392107794934e-06, 6.882873296263029e-06,
        3.632127695731244e-07),
    (1.551284998023963e-05, -0.0001198653948175253, -4.972369503591943e-05, 1.6786090952567768e-05,
        7.915800892716333e-05, -9.860931846821052e-05, 0.00025215553982592653, -0.0002275141742060867,
        -7.471764893180583e-05, -4.359279411287263e-06, 0.00012472676171834565, -4.801087424383358e-05,
        0.00013550221423427967, 1.8293194378880165e-05, 4.214905188730609e-06, 0.00012602489224830006,
        -0.00013276757407166442, -5.4627951419971775e-05, -8.19867589324225e-05, 2.1580023984793738e-05,
        -3.833120023314345e-05, -0.00011590729533078007, 6.447051634642296e-05, -1.0399004702492801e-05,
        8.177101421532209e-05, 4.442234450529807e-05, -0.00019811685510807655, -5.813160032782709e-05,
        0.00014222240668281398, -9.984237721324786e-05, 6.600099794540705e-05, -5.193969426467359e-05,
        0.0001301624961873398, -0.00018117457430506952, 0.00010353899137509024, -4.58719022550842e-05,
        -0.00013309898971706233, 7.37833754386556e-05, 4.756470139608987e-05, -0.00012087804370593574,
        7.567822742257109e-06),
    (-7.751724159121459e-05, 0.00014930124953345506, 0.00020986851542207694, -3.638064916587225e-08,
        -0.00040813132884847715, 0.0005995928861038835, -0.0013348338507021894, 0.001151106231563056,
        0.00026637619224145764, 4.1384294726352456e-05, -0.0006239736870981529, 0.0003282959724501869,
        -0.0006571043174341566, -2.9752228619067026e-05, 3.79208477987452e-05, -0.0006494702592746076,
        0.0006611024757245968, 0.00018359603127338938, 0.0003773054354979053, -0.00015186532754533723,
        0.0001449837774306649, 0.0005711238856199539, -0.00036110884401245824, 0.00010372665296944294,
        -0.00037944222349336587, -0.0002590765377427657, 0.0009472028793730171, 0.00025995599717338756,
        -0.0007423821868560117, 0.0005545601589192586, -0.00037676648278797925, 0.000323044040849643,
        -0.0007122130010550472, 0.0009599927922508299, -0.0005835882091520281, 0.00021164762931145107,
        0.0006447110336732553, -0.0003814552218224115, -0.0002517524072142799, 0.0005994392174946582,
        -0.0001140224848759583),
    (0.000146619809810765, -0.00022033059485299322, -0.0002910384971552366, -1.4622106105887377e-05,
        0.0006447510070961943, -0.0010488609276490127, 0.002068761863741989, -0.0017339388846517778,
        -0.00021999000207524995, -0.00010074354594552245, 0.0009172371360980496, -0.0006132030447164026,
        0.0009474669568277969, -3.788261874208381e-05, -0.00013789345086985782, 0.000986093351420663,
        -0.0009737360808069, -0.00013119924852758046, -0.0005180141237653536, 0.0002769831482857385,
        -0.00014760400693135433, -0.0008256612872688131, 0.0005883731392543719, -0.00023402686830444096,
        0.0005086883212565007, 0.00043162168061360257, -0.0013192208550187854, -0.0003381073247045193,
        0.0011326484893514094, -0.0009059615925928146, 0.0006330350257777866, -0.0005822331636162505,
        0.0011473567603841096, -0.0014957796284783475, 0.0009563665430172879, -0.00028947210388787534,
        -0.0009136014078248301, 0.0005741530454498782, 0.000381816597421867, -0.0008780455369291061,
        0.000279836599726081),
)
